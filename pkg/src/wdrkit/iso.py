"""Digraph isomorphism certificates, search, and vertex transitivity.

The search refines vertices by the multiset of their two-way distance
rows (which subsumes in/out degrees by arc type), then backtracks over
images cell by cell, rarest cells first.  A partial map survives only if
it preserves raw forward distances in both directions against every
vertex already mapped, so the certificate returned always verifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digraph import Digraph, raw_distances


@dataclass(frozen=True)
class IsoCertificate:
    """Vertex bijection ``mapping[v of d1] = v of d2``."""

    mapping: tuple[int, ...]


def verify_certificate(d1: Digraph, d2: Digraph, cert: IsoCertificate) -> bool:
    """True iff the mapping is a bijection satisfying the arc biconditional."""
    if d1.n != d2.n:
        raise ValueError(f"vertex counts differ: {d1.n} vs {d2.n}")
    mapping = cert.mapping
    if len(mapping) != d1.n or sorted(mapping) != list(range(d1.n)):
        return False
    if d1.arc_count != d2.arc_count:
        return False
    arcs2 = d2.arc_set
    return all((mapping[u], mapping[v]) in arcs2 for u, v in d1.arcs)


def _row_invariants(fwd) -> list[tuple]:
    n = len(fwd)
    cols = [tuple(fwd[x][y] for x in range(n)) for y in range(n)]
    return [tuple(sorted(zip(fwd[y], cols[y]))) for y in range(n)]


def _search(fwd1, fwd2, order: list[int], candidates: dict[int, list[int]],
            pinned: dict[int, int]) -> Optional[list[int]]:
    """Backtracking over images; distances to mapped vertices must agree."""
    n = len(fwd1)
    mapping = [-1] * n
    used = [False] * n
    for a, b in pinned.items():
        mapping[a] = b
        used[b] = True
    todo = [v for v in order if mapping[v] < 0]
    mapped = list(pinned.keys())

    # consistency among the pinned vertices themselves
    for a, b in pinned.items():
        for a2, b2 in pinned.items():
            if fwd1[a][a2] != fwd2[b][b2]:
                return None

    def extend(pos: int) -> bool:
        if pos == len(todo):
            return True
        x = todo[pos]
        row1 = fwd1[x]
        for y in candidates[x]:
            if used[y]:
                continue
            row2 = fwd2[y]
            ok = True
            for u in mapped:
                su = mapping[u]
                if row1[u] != row2[su] or fwd1[u][x] != fwd2[su][y]:
                    ok = False
                    break
            if ok:
                mapping[x] = y
                used[y] = True
                mapped.append(x)
                if extend(pos + 1):
                    return True
                mapped.pop()
                used[y] = False
                mapping[x] = -1
        return False

    return mapping if extend(0) else None


def _cells_and_order(inv1: list[tuple], inv2: list[tuple]):
    """Cell partition shared by both digraphs, or None on mismatch."""
    cells1: dict[tuple, list[int]] = {}
    cells2: dict[tuple, list[int]] = {}
    for v, key in enumerate(inv1):
        cells1.setdefault(key, []).append(v)
    for v, key in enumerate(inv2):
        cells2.setdefault(key, []).append(v)
    if set(cells1) != set(cells2):
        return None
    if any(len(cells1[k]) != len(cells2[k]) for k in cells1):
        return None
    order: list[int] = []
    for key in sorted(cells1, key=lambda k: (len(cells1[k]), k)):
        order.extend(sorted(cells1[key]))
    candidates = {v: cells2[inv1[v]] for v in range(len(inv1))}
    return order, candidates


def are_isomorphic(d1: Digraph, d2: Digraph) -> Optional[IsoCertificate]:
    """Search for an isomorphism; the certificate, if any, is verified."""
    if d1.n != d2.n or d1.arc_count != d2.arc_count:
        return None
    fwd1 = raw_distances(d1).tolist()
    fwd2 = raw_distances(d2).tolist()
    inv1 = _row_invariants(fwd1)
    inv2 = _row_invariants(fwd2)
    prepared = _cells_and_order(inv1, inv2)
    if prepared is None:
        return None
    order, candidates = prepared
    mapping = _search(fwd1, fwd2, order, candidates, {})
    if mapping is None:
        return None
    cert = IsoCertificate(mapping=tuple(mapping))
    if not verify_certificate(d1, d2, cert):
        raise AssertionError("search produced an invalid certificate")
    return cert


def automorphism_with(d: Digraph, source: int, target: int) -> Optional[IsoCertificate]:
    """Automorphism pinning ``source -> target``, if one exists."""
    fwd = raw_distances(d).tolist()
    inv = _row_invariants(fwd)
    prepared = _cells_and_order(inv, inv)
    if prepared is None or inv[source] != inv[target]:
        return None
    order, candidates = prepared
    mapping = _search(fwd, fwd, order, candidates, {source: target})
    if mapping is None:
        return None
    cert = IsoCertificate(mapping=tuple(mapping))
    if not verify_certificate(d, d, cert):
        raise AssertionError("search produced an invalid certificate")
    return cert


def is_vertex_transitive(d: Digraph) -> bool:
    """Whether the automorphism group has a single vertex orbit.

    Automorphisms found along the way enlarge the known orbit of vertex
    0, so most vertices need no fresh search.
    """
    if d.n == 1:
        return True
    gens: list[tuple[int, ...]] = []
    orbit = {0}

    def close_orbit():
        frontier = list(orbit)
        while frontier:
            nxt = []
            for v in frontier:
                for gmap in gens:
                    w = gmap[v]
                    if w not in orbit:
                        orbit.add(w)
                        nxt.append(w)
            frontier = nxt

    for v in range(1, d.n):
        if v in orbit:
            continue
        cert = automorphism_with(d, 0, v)
        if cert is None:
            return False
        gens.append(cert.mapping)
        orbit.add(v)
        close_orbit()
    return True
