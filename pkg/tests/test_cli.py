import json
from importlib import resources

import jsonschema
import pytest

from wdrkit.cli import main
from wdrkit.digraph import parse_dot
from wdrkit.families import gamma_qsk, GammaQskParams

META_SCHEMA = json.loads(
    resources.files("wdrkit.schemas").joinpath("construct_meta.schema.json").read_text())


def test_construct_writes_dot_and_json(tmp_path, capsys):
    rc = main(["construct", "gamma-qsk:q=3,s=6,k=1", "--out", str(tmp_path)])
    assert rc == 0
    dot_path = tmp_path / "gamma-qsk_q_3_s_6_k_1.dot"
    json_path = tmp_path / "gamma-qsk_q_3_s_6_k_1.json"
    assert dot_path.exists() and json_path.exists()
    printed = capsys.readouterr().out
    assert str(dot_path) in printed and str(json_path) in printed

    meta = json.loads(json_path.read_text())
    jsonschema.validate(meta, META_SCHEMA)
    assert meta["vertices"] == 18
    assert meta["arcs"] == 54
    assert meta["girth"] == 3
    assert meta["strongly_connected"] is True
    assert meta["arc_type_census"] == {"(1,2)": 1, "(1,3)": 2}

    back = parse_dot(dot_path.read_text())
    assert back.arcs == gamma_qsk(GammaQskParams(3, 6, 1)).arcs


def test_construct_deterministic(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["construct", "gamma-g:g=5", "--out", str(out1)]) == 0
    assert main(["construct", "gamma-g:g=5", "--out", str(out2)]) == 0
    assert (out1 / "gamma-g_g_5.dot").read_bytes() == (out2 / "gamma-g_g_5.dot").read_bytes()
    assert (out1 / "gamma-g_g_5.json").read_bytes() == (out2 / "gamma-g_g_5.json").read_bytes()


def test_construct_format_restriction(tmp_path):
    assert main(["construct", "gamma-g:g=3", "--out", str(tmp_path), "--format", "dot"]) == 0
    assert (tmp_path / "gamma-g_g_3.dot").exists()
    assert not (tmp_path / "gamma-g_g_3.json").exists()


def test_construct_not_wdr_parameters_still_build(tmp_path):
    # construction is independent of regularity
    assert main(["construct", "gamma-g:g=4", "--out", str(tmp_path)]) == 0


def test_construct_exit_codes(tmp_path, capsys):
    assert main(["construct", "gamma-qsk:q=2,s=6,k=1", "--out", str(tmp_path)]) == 3
    assert main(["construct", "gamma-qsk:q=zzz", "--out", str(tmp_path)]) == 2
    capsys.readouterr()


def test_analyze_wdr_and_witness(capsys):
    assert main(["analyze", "gamma-g:g=3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["is_wdr"] is True and doc["commutative"] is True

    assert main(["analyze", "gamma-g:g=4"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["is_wdr"] is False
    assert doc["witness"]["count1"] != doc["witness"]["count2"]


def test_analyze_directed_cycle_thin(capsys, tmp_path):
    assert main(["construct", "cayley:mods=7;set=(1)", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    dot = next(tmp_path.glob("*.dot"))
    assert main(["analyze", str(dot)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["thin"] is True and doc["vertices"] == 7


def test_analyze_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["analyze", "gamma-qsk:q=3,s=6,k=1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc == json.loads(capsys.readouterr().out)


def test_analyze_error_codes(capsys, tmp_path):
    assert main(["analyze", "gamma-g:g"]) == 2
    assert main(["analyze", "gamma-g:g=2"]) == 3
    bad = tmp_path / "bad.dot"
    bad.write_text("not a digraph at all")
    assert main(["analyze", str(bad)]) == 2
    # disconnected input is a parameter problem, not a syntax problem
    frag = tmp_path / "frag.dot"
    frag.write_text("digraph wdr {\n  // vertices: 3\n  0 -> 1;\n  1 -> 2;\n}\n")
    assert main(["analyze", str(frag)]) == 3
    capsys.readouterr()


def test_sweep_agreement_and_exit(capsys):
    assert main(["sweep", "--law", "prop2.1", "--g", "3:8"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "g,condition,is_wdr,agree"
    assert len(out) == 7
    assert all(line.endswith("true") for line in out[1:])


def test_sweep_qsk_with_artifacts(tmp_path, capsys):
    rc = main(["sweep", "--q", "3:3", "--s", "3:8", "--k", "1:3",
               "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "sweep.csv").exists()
    assert (tmp_path / "sweep.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    capsys.readouterr()


def test_sweep_usage_errors(capsys):
    assert main(["sweep", "--law", "prop7"]) == 2
    assert main(["sweep", "--q", "5:3"]) == 3
    capsys.readouterr()


def test_census_cli(tmp_path, capsys):
    rc = main(["census", "--max-order", "12", "--out", str(tmp_path)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["unmatched"] == 0
    assert {c["matched_family"] for c in doc["classes"]} == {
        "gamma-g:g=3", "gamma-qsk:q=3,s=4,k=2"}
    assert json.loads((tmp_path / "census.json").read_text()) == doc
    assert (tmp_path / "census.csv").exists()
    assert (tmp_path / "census.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_census_cap_exit(capsys):
    assert main(["census", "--max-order", "100"]) == 3
    capsys.readouterr()


def test_verify_iso_cli(capsys):
    assert main(["verify-iso", "--q", "3", "--s", "6", "--k", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["condition"] == "C1"
    assert doc["explicit_map_ok"] is True and doc["search_found"] is True

    assert main(["verify-iso", "--q", "3", "--s", "7", "--k", "3"]) == 3
    capsys.readouterr()


def test_usage_errors_exit_2(capsys):
    assert main([]) == 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_help_exits_clean(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
