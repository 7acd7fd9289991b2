"""Census of abelian Cayley digraphs with three generators.

For every abelian group of order at most a bound and every 3-subset of
nonidentity elements, the scan keeps the digraphs that are strongly
connected, loop-and-2-cycle free (girth > 2), carry exactly two arc
types and are weakly distance-regular, then matches each isomorphism
class against the classified family members of equal order.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .digraph import Digraph, from_arcs
from .families import CayleySpec, cayley, theorem_families
from .iso import are_isomorphic
from .scheme import analyze

DEFAULT_CENSUS_CAP = 36


@dataclass(frozen=True)
class CensusSpec:
    """Scan bounds; orders below 12 simply produce an empty catalogue."""

    max_order: int
    jobs: int = 1
    cap: int = DEFAULT_CENSUS_CAP

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError(f"max order must be positive, got {self.max_order}")
        if self.max_order > self.cap:
            raise ValueError(f"max order {self.max_order} exceeds cap {self.cap}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be positive, got {self.jobs}")


def _partitions(n: int) -> list[tuple[int, ...]]:
    """Integer partitions in weakly decreasing order."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return out


def _factorize(n: int) -> list[tuple[int, int]]:
    fs = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            fs.append((d, e))
        d += 1
    if n > 1:
        fs.append((n, 1))
    return fs


def abelian_group_shapes(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists of all abelian groups of one order.

    Each shape is an ascending divisibility chain ``d1 | d2 | ...``;
    shapes are returned sorted.
    """
    if order < 1:
        raise ValueError("order must be positive")
    if order == 1:
        return [(1,)]
    per_prime = [(p, _partitions(e)) for p, e in _factorize(order)]
    shapes = set()
    for chosen in itertools.product(*[parts for _, parts in per_prime]):
        depth = max(len(part) for part in chosen)
        factors = []
        for j in range(depth):
            f = 1
            for (p, _), part in zip(per_prime, chosen):
                if j < len(part):
                    f *= p ** part[j]
            factors.append(f)
        shapes.add(tuple(sorted(factors)))
    return sorted(shapes)


def _group_tables(moduli: tuple[int, ...]):
    """Element addition/negation on row-major indices."""
    n = 1
    for m in moduli:
        n *= m
    elems = list(itertools.product(*[range(m) for m in moduli]))
    index = {e: i for i, e in enumerate(elems)}
    neg = [index[tuple((-a) % m for a, m in zip(e, moduli))] for e in elems]
    add = [[index[tuple((a + b) % m for a, b, m in zip(e, f, moduli))] for f in elems]
           for e in elems]
    return n, elems, add, neg


def _reverse_depths(add, neg, gens, n: int) -> Optional[dict[int, int]]:
    """Distance to the identity from each generator, via reverse BFS."""
    want = set(gens)
    dist = {0: 0}
    queue = deque([0])
    found: dict[int, int] = {}
    steps = [add[neg[s]] for s in gens]
    while queue and want:
        u = queue.popleft()
        du = dist[u] + 1
        for step in steps:
            v = step[u]
            if v not in dist:
                dist[v] = du
                if v in want:
                    found[v] = du
                    want.discard(v)
                queue.append(v)
    return found if not want else None


@dataclass
class CensusHit:
    order: int
    moduli: tuple[int, ...]
    connection_set: tuple[tuple[int, ...], ...]
    arc_types: tuple[tuple[int, int], ...]


@dataclass
class CensusClass:
    order: int
    representative: CensusHit
    multiplicity: int
    matched_family: Optional[str]
    certificate: Optional[tuple[int, ...]]


@dataclass
class CensusCatalogue:
    max_order: int
    groups_scanned: int
    subsets_scanned: int
    skipped_short_girth: int
    skipped_not_generating: int
    skipped_arc_types: int
    analyzed: int
    hits: list[CensusHit]
    classes: list[CensusClass]

    @property
    def unmatched(self) -> int:
        return sum(1 for c in self.classes if c.matched_family is None)

    def to_json_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "groups_scanned": self.groups_scanned,
            "subsets_scanned": self.subsets_scanned,
            "skipped_short_girth": self.skipped_short_girth,
            "skipped_not_generating": self.skipped_not_generating,
            "skipped_arc_types": self.skipped_arc_types,
            "analyzed": self.analyzed,
            "hit_count": len(self.hits),
            "hits": [
                {
                    "order": h.order,
                    "moduli": list(h.moduli),
                    "connection_set": [list(s) for s in h.connection_set],
                    "arc_types": [list(t) for t in h.arc_types],
                }
                for h in self.hits
            ],
            "classes": [
                {
                    "order": c.order,
                    "moduli": list(c.representative.moduli),
                    "connection_set": [list(s) for s in c.representative.connection_set],
                    "multiplicity": c.multiplicity,
                    "matched_family": c.matched_family,
                    "certificate": list(c.certificate) if c.certificate is not None else None,
                }
                for c in self.classes
            ],
            "unmatched": self.unmatched,
        }


def _scan_group(moduli: tuple[int, ...]) -> tuple[int, int, int, int, int, list[CensusHit]]:
    """Scan all 3-subsets of one group; returns filter tallies and hits."""
    n, elems, add, neg = _group_tables(moduli)
    subsets = girth2 = nongen = badtypes = analyzed = 0
    hits: list[CensusHit] = []
    if n < 4:
        return (0, 0, 0, 0, 0, hits)
    for gens in itertools.combinations(range(1, n), 3):
        subsets += 1
        gset = set(gens)
        if any(neg[s] in gset for s in gens):
            girth2 += 1
            continue
        # strong connectivity == S generates (finite group)
        reached = bytearray(n)
        reached[0] = 1
        count = 1
        stack = [0]
        steps = [add[s] for s in gens]
        while stack:
            u = stack.pop()
            for step in steps:
                v = step[u]
                if not reached[v]:
                    reached[v] = 1
                    count += 1
                    stack.append(v)
        if count != n:
            nongen += 1
            continue
        depths = _reverse_depths(add, neg, gens, n)
        assert depths is not None
        if len(set(depths.values())) != 2:
            badtypes += 1
            continue
        analyzed += 1
        arcs = [(u, step[u]) for u in range(n) for step in steps]
        d = from_arcs(n, arcs)
        rep = analyze(d, fail_fast=True)
        if rep.is_wdr:
            types = tuple(sorted({(1, r) for r in depths.values()}))
            hits.append(CensusHit(order=n, moduli=moduli,
                                  connection_set=tuple(elems[s] for s in gens),
                                  arc_types=types))
    return (subsets, girth2, nongen, badtypes, analyzed, hits)


def census_scan(spec: CensusSpec) -> CensusCatalogue:
    """Run the census and match hits against the classified families."""
    groups: list[tuple[int, ...]] = []
    for order in range(1, spec.max_order + 1):
        groups.extend(abelian_group_shapes(order))
    groups = [g for g in groups if _order_of(g) >= 4]

    if spec.jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(spec.jobs) as pool:
            results = pool.map(_scan_group, groups)
    else:
        results = [_scan_group(g) for g in groups]

    subsets = girth2 = nongen = badtypes = analyzed = 0
    hits: list[CensusHit] = []
    for (su, g2, ng, bt, an, hs) in results:
        subsets += su
        girth2 += g2
        nongen += ng
        badtypes += bt
        analyzed += an
        hits.extend(hs)

    classes = _classify_hits(hits, spec.max_order)
    return CensusCatalogue(
        max_order=spec.max_order,
        groups_scanned=len(groups),
        subsets_scanned=subsets,
        skipped_short_girth=girth2,
        skipped_not_generating=nongen,
        skipped_arc_types=badtypes,
        analyzed=analyzed,
        hits=hits,
        classes=classes,
    )


def _order_of(moduli: tuple[int, ...]) -> int:
    n = 1
    for m in moduli:
        n *= m
    return n


def _hit_digraph(hit: CensusHit) -> Digraph:
    return cayley(CayleySpec(moduli=hit.moduli, connection_set=hit.connection_set))


def _classify_hits(hits: list[CensusHit], max_order: int) -> list[CensusClass]:
    """Dedup hits by isomorphism, then match each class to a family member."""
    classes: list[CensusClass] = []
    built: list[Digraph] = []
    for hit in hits:
        d = _hit_digraph(hit)
        placed = False
        for idx, cls in enumerate(classes):
            if cls.order == hit.order and are_isomorphic(built[idx], d) is not None:
                cls.multiplicity += 1
                placed = True
                break
        if not placed:
            classes.append(CensusClass(order=hit.order, representative=hit,
                                       multiplicity=1, matched_family=None,
                                       certificate=None))
            built.append(d)
    if classes:
        members = theorem_families(max_order)
        member_digraphs = [(label, d) for label, d in members]
        for idx, cls in enumerate(classes):
            for label, fd in member_digraphs:
                if fd.n != cls.order:
                    continue
                cert = are_isomorphic(built[idx], fd)
                if cert is not None:
                    cls.matched_family = label
                    cls.certificate = cert.mapping
                    break
    return classes
