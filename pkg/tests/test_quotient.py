import pytest

from helpers import directed_cycle
from wdrkit.digraph import distance_pairs, from_arcs
from wdrkit.families import GammaQskParams, gamma_g, gamma_qsk
from wdrkit.quotient import (MAX_CYCLE_VERTICES, enumerate_circuits,
                             equivalence_closure, is_circuit, quotient_digraph,
                             quotient_to_dot, same_type_circuit_check)
from wdrkit.scheme import relation_partition


def _partition_of(d):
    return relation_partition(distance_pairs(d))


def test_closure_identity_gives_singletons():
    part = _partition_of(directed_cycle(4))
    vp = equivalence_closure(part, [0])
    assert vp.size == 4
    assert all(len(b) == 1 for b in vp.blocks)


def test_closure_everything_gives_one_block():
    part = _partition_of(directed_cycle(4))
    vp = equivalence_closure(part, list(range(part.size)))
    assert vp.size == 1
    assert vp.blocks[0] == (0, 1, 2, 3)


def test_closure_validation():
    part = _partition_of(directed_cycle(4))
    with pytest.raises(ValueError, match="empty"):
        equivalence_closure(part, [])
    with pytest.raises(ValueError, match="unknown relation"):
        equivalence_closure(part, [17])


def test_closure_is_idempotent():
    d = gamma_g(3)
    part = _partition_of(d)
    gen = [part.id_of((1, 2)), part.id_of((2, 1))]
    vp1 = equivalence_closure(part, gen)
    # closing again over a partition-compatible relation changes nothing:
    # build the quotient, then the quotient of the quotient is itself
    dq = quotient_digraph(d, part, vp1)
    qpart = _partition_of(dq)
    vp2 = equivalence_closure(qpart, [0])
    assert vp2.size == dq.n


def test_gamma_g3_common_type_closure_two_blocks():
    d = gamma_g(3)
    part = _partition_of(d)
    vp = equivalence_closure(part, [part.id_of((1, 2)), part.id_of((2, 1))])
    assert vp.size == 2
    assert sorted(len(b) for b in vp.blocks) == [6, 6]
    dq = quotient_digraph(d, part, vp)
    assert is_circuit(dq) == 2


def test_gamma_qsk_common_type_closure_collapses():
    pr = GammaQskParams(3, 6, 1)
    d = gamma_qsk(pr)
    part = _partition_of(d)
    vp = equivalence_closure(part, [part.id_of((1, 3))])
    assert vp.size == 1
    dq = quotient_digraph(d, part, vp)
    assert dq.n == 1 and dq.arc_count == 0
    assert is_circuit(dq) == 1


def test_quotient_with_singletons_reproduces_digraph():
    d = gamma_g(3)
    part = _partition_of(d)
    vp = equivalence_closure(part, [0])
    dq = quotient_digraph(d, part, vp)
    assert dq.n == d.n and dq.arcs == d.arcs


def test_quotient_validation():
    d = directed_cycle(4)
    part = _partition_of(d)
    vp = equivalence_closure(part, [0])
    with pytest.raises(ValueError, match="does not match"):
        quotient_digraph(directed_cycle(5), part, vp)
    with pytest.raises(ValueError, match="relation partition"):
        quotient_digraph(d, _partition_of(directed_cycle(5)), vp)


def test_quotient_block_sizes_divide_order():
    for d in (gamma_g(5), gamma_qsk(GammaQskParams(3, 8, 3))):
        part = _partition_of(d)
        common = max(range(1, part.size),
                     key=lambda rid: (part.class_of[0] == rid).sum())
        vp = equivalence_closure(part, [common])
        sizes = {len(b) for b in vp.blocks}
        assert len(sizes) == 1
        assert vp.size * sizes.pop() == d.n


def test_quotient_to_dot_lists_blocks():
    d = gamma_g(3)
    part = _partition_of(d)
    vp = equivalence_closure(part, [part.id_of((1, 2))])
    dq = quotient_digraph(d, part, vp)
    text = quotient_to_dot(dq, vp)
    assert text.count("// block ") == vp.size
    assert "0 -> 1" in text and "1 -> 0" in text


def test_is_circuit():
    assert is_circuit(from_arcs(1, [])) == 1
    assert is_circuit(from_arcs(2, [(0, 1), (1, 0)])) == 2
    assert is_circuit(directed_cycle(7)) == 7
    assert is_circuit(gamma_g(3)) is None
    assert is_circuit(from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2)])) is None
    assert is_circuit(from_arcs(3, [(0, 1), (1, 2)])) is None


def test_enumerate_circuits_cycle():
    d = directed_cycle(5)
    m = distance_pairs(d)
    assert enumerate_circuits(d, m, 5) == [(0, 1, 2, 3, 4)]
    assert enumerate_circuits(d, m, 3) == []


def test_enumerate_circuits_canonical_rotation():
    d = from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2), (0, 2), (2, 0)])
    m = distance_pairs(d)
    found = enumerate_circuits(d, m, 2)
    assert found == [(0, 1), (0, 2), (2, 3)]


def test_enumerate_circuits_counts_gamma_g3():
    d = gamma_g(3)
    m = distance_pairs(d)
    assert len(enumerate_circuits(d, m, 3)) == 16
    assert len(enumerate_circuits(d, m, 4)) == 3
    for cyc in enumerate_circuits(d, m, 3):
        assert len(set(cyc)) == 3
        assert all((cyc[i], cyc[(i + 1) % 3]) in d.arc_set for i in range(3))


def test_enumerate_circuits_guards(monkeypatch):
    d = directed_cycle(5)
    m = distance_pairs(d)
    with pytest.raises(ValueError, match="exceeds cap"):
        enumerate_circuits(d, m, 13)
    with pytest.raises(ValueError, match="at least 2"):
        enumerate_circuits(d, m, 1)
    monkeypatch.setenv("WDRKIT_CYCLE_CAP", "15")
    d13 = directed_cycle(13)
    m13 = distance_pairs(d13)
    assert enumerate_circuits(d13, m13, 13) == [tuple(range(13))]
    monkeypatch.setenv("WDRKIT_CYCLE_CAP", "four")
    with pytest.raises(ValueError, match="WDRKIT_CYCLE_CAP"):
        enumerate_circuits(d, m, 3)


def test_enumerate_circuits_vertex_cap():
    d = directed_cycle(MAX_CYCLE_VERTICES + 1)
    m = distance_pairs(d)
    with pytest.raises(ValueError, match="vertex"):
        enumerate_circuits(d, m, 3)


def test_same_type_circuits():
    d3 = directed_cycle(3)
    assert same_type_circuit_check(d3, distance_pairs(d3), 3)
    d = gamma_g(3)
    m = distance_pairs(d)
    assert same_type_circuit_check(d, m, 4)
    assert same_type_circuit_check(d, m, 3)
    pr = gamma_qsk(GammaQskParams(3, 6, 1))
    mq = distance_pairs(pr)
    assert same_type_circuit_check(pr, mq, 3)
