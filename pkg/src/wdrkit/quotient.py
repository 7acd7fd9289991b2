"""Equivalence closures of relation sets, quotient digraphs, circuits.

The closure of a set of relations is the finest vertex partition whose
blocks are closed under every generating relation read as an undirected
edge set; blocks are connected components of that union graph.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .digraph import Digraph, DistancePairMatrix, from_arcs
from .scheme import RelationPartition

DEFAULT_CYCLE_CAP = 12
MAX_CYCLE_VERTICES = 200


@dataclass(frozen=True)
class VertexPartition:
    """Blocks listed in order of their smallest member."""

    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def size(self) -> int:
        return len(self.blocks)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def equivalence_closure(part: RelationPartition, generating: Sequence[int]) -> VertexPartition:
    """Minimal equivalence relation containing the given relations.

    ``generating`` lists relation ids; the identity relation is implied.
    Unknown ids raise ``ValueError``.
    """
    gen = sorted(set(generating))
    if not gen:
        raise ValueError("generating set of relations is empty")
    for rid in gen:
        if not (0 <= rid < part.size):
            raise ValueError(f"unknown relation id {rid}")
    n = part.n
    uf = _UnionFind(n)
    mask = np.isin(part.class_of, gen)
    for x, y in np.argwhere(mask):
        uf.union(int(x), int(y))
    roots = [uf.find(v) for v in range(n)]
    order: dict[int, int] = {}
    for v in range(n):
        if roots[v] not in order:
            order[roots[v]] = len(order)
    block_of = tuple(order[r] for r in roots)
    blocks: list[list[int]] = [[] for _ in range(len(order))]
    for v, b in enumerate(block_of):
        blocks[b].append(v)
    return VertexPartition(blocks=tuple(tuple(b) for b in blocks), block_of=block_of)


def quotient_digraph(d: Digraph, part: RelationPartition,
                     vp: VertexPartition) -> Digraph:
    """Digraph on blocks: an arc where any arc joins two distinct blocks.

    Arcs inside a block are dropped (the quotient stays loop-free).  The
    relation partition the blocks came from rides along for a consistency
    check against the digraph.
    """
    if vp.n != d.n:
        raise ValueError("partition does not match digraph")
    if part.n != d.n:
        raise ValueError("relation partition does not match digraph")
    arcs = set()
    for u, v in d.arcs:
        bu, bv = vp.block_of[u], vp.block_of[v]
        if bu != bv:
            arcs.add((bu, bv))
    labels = ["{" + ",".join(str(v) for v in block) + "}" for block in vp.blocks]
    return from_arcs(vp.size, sorted(arcs), labels=labels)


def quotient_to_dot(dq: Digraph, vp: VertexPartition) -> str:
    """DOT text of a quotient digraph with block membership in comments."""
    from .digraph import to_dot

    comments = [f"block {b}: {{{','.join(str(v) for v in block)}}}"
                for b, block in enumerate(vp.blocks)]
    return to_dot(dq, None, comments=comments)


def is_circuit(d: Digraph) -> Optional[int]:
    """Length of ``d`` as a circuit, else None.

    A single vertex without arcs counts as the length-1 circuit; two
    mutually joined vertices as length 2; otherwise the digraph must be
    one directed cycle through all vertices.
    """
    if d.n == 1:
        return 1 if d.arc_count == 0 else None
    if any(len(d.out[v]) != 1 for v in range(d.n)):
        return None
    seen = 1
    v = d.out[0][0]
    while v != 0 and seen <= d.n:
        v = d.out[v][0]
        seen += 1
    return d.n if (v == 0 and seen == d.n) else None


def _cycle_cap() -> int:
    raw = os.environ.get("WDRKIT_CYCLE_CAP")
    if raw is None:
        return DEFAULT_CYCLE_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"WDRKIT_CYCLE_CAP must be an integer, got {raw!r}") from exc


def enumerate_circuits(d: Digraph, m: DistancePairMatrix, length: int) -> list[tuple[int, ...]]:
    """All circuits (directed cycles on distinct vertices) of one length.

    Each circuit is reported once, rotated so its smallest vertex leads.
    Guarded by ``WDRKIT_CYCLE_CAP`` (default 12) and a 200-vertex limit.
    """
    cap = _cycle_cap()
    if length > cap:
        raise ValueError(f"circuit length {length} exceeds cap {cap}")
    if d.n > MAX_CYCLE_VERTICES:
        raise ValueError(f"{d.n} vertices exceed the {MAX_CYCLE_VERTICES}-vertex cap")
    if length < 2:
        raise ValueError("circuits have length at least 2")
    fwd = m.forward
    found: list[tuple[int, ...]] = []
    path: list[int] = []
    on_path = [False] * d.n

    def walk(start: int, u: int, remaining: int):
        if remaining == 0:
            if start in d.out[u]:
                found.append(tuple(path))
            return
        for w in d.out[u]:
            if w > start and not on_path[w] and fwd[w, start] <= remaining:
                on_path[w] = True
                path.append(w)
                walk(start, w, remaining - 1)
                path.pop()
                on_path[w] = False

    for start in range(d.n):
        path = [start]
        on_path = [False] * d.n
        on_path[start] = True
        walk(start, start, length - 1)
    return found


def same_type_circuit_check(d: Digraph, m: DistancePairMatrix, length: int) -> bool:
    """Whether every circuit of the given length uses arcs of one type only."""
    for cyc in enumerate_circuits(d, m, length):
        arcs = list(zip(cyc, cyc[1:] + cyc[:1]))
        types = {(1, int(m.forward[v, u])) for u, v in arcs}
        if len(types) > 1:
            return False
    return True
