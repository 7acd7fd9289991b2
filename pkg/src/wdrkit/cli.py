"""Command line interface.

Subcommands: construct, analyze, sweep, census, verify-iso.  Exit codes:
0 success or agreement, 1 mathematical disagreement (a witness or an
unmatched census class), 2 usage errors, 3 invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from .census import CensusCatalogue, CensusSpec, census_scan
from .digraph import (Digraph, NotStronglyConnected, arc_type_census,
                      distance_pairs, girth, is_strongly_connected, parse_dot,
                      to_dot)
from .families import (GammaQskParams, GrammarError, cayley, cayley_iso_target,
                       classify_c123, gamma_qsk, parse_construction)
from .iso import IsoCertificate, are_isomorphic, verify_certificate
from .scheme import analyze
from .sweep import (LAW_GAMMA_G, LAW_GAMMA_QSK, SweepRow, SweepSpec, run_sweep,
                    sweep_header, sweep_table)

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2
EXIT_BAD_PARAMS = 3


def _json_dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", text).strip("_")


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _load_input(text: str) -> Digraph:
    path = Path(text)
    if path.exists():
        try:
            return parse_dot(path.read_text())
        except (OSError, ValueError) as exc:
            raise GrammarError(f"unreadable DOT input {text!r}: {exc}") from exc
    return parse_construction(text)


def cmd_construct(args: argparse.Namespace) -> int:
    d = parse_construction(args.construction)
    out_dir = Path(args.out) if args.out else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    slug = _slug(d.name or args.construction)
    connected = is_strongly_connected(d)
    m = distance_pairs(d) if connected else None
    census = None
    if m is not None:
        try:
            census = arc_type_census(d, m)
        except ValueError:
            census = None
    meta = {
        "construction": d.name or args.construction,
        "vertices": d.n,
        "arcs": d.arc_count,
        "girth": girth(d, m) if (m is not None and d.arc_count) else None,
        "arc_type_census": ({f"(1,{r})": v for (_, r), v in census.items()}
                            if census is not None else None),
        "strongly_connected": connected,
    }
    wrote = []
    if args.format in (None, "dot"):
        dot_path = out_dir / f"{slug}.dot"
        dot_path.write_text(to_dot(d, m))
        wrote.append(dot_path)
    if args.format in (None, "json"):
        json_path = out_dir / f"{slug}.json"
        json_path.write_text(_json_dump(meta))
        wrote.append(json_path)
    for p in wrote:
        print(p)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    d = _load_input(args.input)
    report = analyze(d)
    doc = report.to_json_dict()
    text = _json_dump(doc)
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return EXIT_OK if report.is_wdr else EXIT_DISAGREE


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = SweepSpec(law=args.law,
                     q_range=_parse_range(args.q),
                     s_range=_parse_range(args.s),
                     k_range=_parse_range(args.k),
                     g_range=_parse_range(args.g),
                     jobs=args.jobs)
    rows = run_sweep(spec)
    if not rows:
        print("no tuples in the requested box", file=sys.stderr)
        return EXIT_OK
    header = sweep_header(spec.law)
    print(",".join(header))
    for cells in sweep_table(rows, spec.law):
        print(",".join(cells))
    disagreements = [r for r in rows if not r.agree]
    for r in disagreements:
        print(f"DISAGREE: params={r.params} condition={r.condition} is_wdr={r.is_wdr}",
              file=sys.stderr)
    if args.out:
        from .report import sweep_figure, write_sweep_csv

        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_sweep_csv(rows, spec.law, out_dir / "sweep.csv")
        sweep_figure(rows, spec.law, out_dir / "sweep.png")
    return EXIT_DISAGREE if disagreements else EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    spec = CensusSpec(max_order=args.max_order, jobs=args.jobs, cap=args.census_cap)
    cat = census_scan(spec)
    doc = cat.to_json_dict()
    sys.stdout.write(_json_dump(doc))
    if args.out:
        from .report import census_figure, write_census_csv

        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "census.json").write_text(_json_dump(doc))
        write_census_csv(cat, out_dir / "census.csv")
        census_figure(cat, out_dir / "census.png")
    return EXIT_DISAGREE if cat.unmatched else EXIT_OK


def cmd_verify_iso(args: argparse.Namespace) -> int:
    params = GammaQskParams(args.q, args.s, args.k)
    cond = classify_c123(params)
    if cond is None:
        raise ValueError(f"({args.q},{args.s},{args.k}) satisfies none of C1/C2/C3; "
                         "no isomorphism target is defined")
    im = cayley_iso_target(params)
    source = gamma_qsk(params)
    target = cayley(im.target)
    explicit_ok = verify_certificate(source, target, IsoCertificate(im.mapping))
    search_cert = are_isomorphic(source, target)
    doc = {
        "params": [params.q, params.s, params.k],
        "condition": cond,
        "target": im.target.to_string(),
        "explicit_map_ok": explicit_ok,
        "search_found": search_cert is not None,
    }
    sys.stdout.write(_json_dump(doc))
    return EXIT_OK if explicit_ok and search_cert is not None else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wdrkit",
        description="Weakly distance-regular digraphs of valency three: "
                    "construction, analysis, sweeps and census.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a digraph and write DOT plus JSON metadata")
    p.add_argument("construction", help="construction string, e.g. gamma-qsk:q=3,s=6,k=1")
    p.add_argument("--out", help="output directory (default: current)")
    p.add_argument("--format", choices=("json", "dot"), help="restrict output to one format")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="report weak distance-regularity of an input")
    p.add_argument("input", help="construction string or DOT file")
    p.add_argument("--out", help="also write the JSON report to this file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="compare computed regularity against the closed law")
    p.add_argument("--law", choices=(LAW_GAMMA_G, LAW_GAMMA_QSK), default=LAW_GAMMA_QSK)
    p.add_argument("--q", default="3:5", help="q range, lo:hi")
    p.add_argument("--s", default="3:20", help="s range, lo:hi")
    p.add_argument("--k", default="1:5", help="k range, lo:hi (clamped to validity)")
    p.add_argument("--g", default="3:10", help="g range for --law prop2.1")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="directory for sweep.csv and sweep.png")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("census", help="scan abelian Cayley digraphs and match families")
    p.add_argument("--max-order", type=int, default=36)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--census-cap", type=int, default=36,
                   help="refuse max orders above this bound")
    p.add_argument("--out", help="directory for census.json, census.csv, census.png")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify-iso", help="check the explicit Cayley isomorphism of a "
                                          "regular family-two instance")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_verify_iso)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except GrammarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, NotStronglyConnected) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS


if __name__ == "__main__":
    sys.exit(main())
