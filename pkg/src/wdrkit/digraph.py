"""Loop-free digraphs with two-way distances, girth and arc types.

Vertices are integers ``0 .. n-1``.  All distance work is done by plain
breadth-first search; the two-way distance of an ordered pair ``(x, y)``
is ``(d(x, y), d(y, x))`` where ``d`` is the usual shortest-directed-path
distance.  An arc ``(u, v)`` has type ``(1, r)`` where ``r = d(v, u)``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np


class NotStronglyConnected(ValueError):
    """Some ordered vertex pair has no directed path."""

    def __init__(self, source: int, target: int):
        super().__init__(f"not strongly connected: no path from {source} to {target}")
        self.source = source
        self.target = target


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph given by sorted out-neighbour lists.

    ``labels`` may carry opaque per-vertex strings (e.g. group elements)
    and ``name`` a construction string; neither influences any
    computation.
    """

    n: int
    out: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None
    name: Optional[str] = None

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.out[u])

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    @cached_property
    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            ins[v].append(u)
        return tuple(tuple(sorted(vs)) for vs in ins)

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    @property
    def arc_count(self) -> int:
        return len(self.arcs)


def from_arcs(n: int, arcs: Iterable[tuple[int, int]], labels: Optional[Sequence[str]] = None,
              name: Optional[str] = None) -> Digraph:
    """Build a digraph from an arc list.

    Duplicate arcs collapse.  Loops and out-of-range endpoints raise
    ``ValueError``.
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    outs: list[set[int]] = [set() for _ in range(n)]
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"arc ({u}, {v}) out of range for {n} vertices")
        if u == v:
            raise ValueError(f"loop at vertex {u} is not allowed")
        outs[u].add(v)
    lab = tuple(labels) if labels is not None else None
    if lab is not None and len(lab) != n:
        raise ValueError("label count does not match vertex count")
    return Digraph(n=n, out=tuple(tuple(sorted(o)) for o in outs), labels=lab, name=name)


def _bfs(out: Sequence[Sequence[int]], src: int, n: int) -> list[int]:
    dist = [-1] * n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in out[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def raw_distances(d: Digraph) -> np.ndarray:
    """All-pairs forward distance matrix with -1 for unreachable pairs."""
    mat = np.empty((d.n, d.n), dtype=np.int32)
    for src in range(d.n):
        mat[src] = _bfs(d.out, src, d.n)
    return mat


def is_strongly_connected(d: Digraph) -> bool:
    if _bfs(d.out, 0, d.n).count(-1):
        return False
    return _bfs(d.in_neighbors, 0, d.n).count(-1) == 0


@dataclass(frozen=True)
class DistancePairMatrix:
    """Two-way distances of a strongly connected digraph.

    Only the forward matrix is stored; ``entry(x, y)`` reads the pair
    ``(forward[x, y], forward[y, x])``.
    """

    forward: np.ndarray

    def __post_init__(self):
        self.forward.setflags(write=False)

    @property
    def n(self) -> int:
        return self.forward.shape[0]

    def entry(self, x: int, y: int) -> tuple[int, int]:
        return int(self.forward[x, y]), int(self.forward[y, x])


def distance_pairs(d: Digraph) -> DistancePairMatrix:
    """Compute all two-way distances; raises ``NotStronglyConnected``
    naming an unreachable ordered pair otherwise."""
    mat = raw_distances(d)
    if (mat < 0).any():
        src, tgt = np.argwhere(mat < 0)[0]
        raise NotStronglyConnected(int(src), int(tgt))
    return DistancePairMatrix(forward=mat)


def girth(d: Digraph, m: Optional[DistancePairMatrix] = None) -> int:
    """Length of a shortest circuit: ``min over arcs (u,v) of d(v,u)+1``.

    Always >= 2 since loops are banned at construction.
    """
    if d.arc_count == 0:
        raise ValueError("digraph has no arcs, hence no circuit")
    if m is None:
        m = distance_pairs(d)
    back = m.forward[tuple(np.array(d.arcs).T[::-1])]
    return int(back.min()) + 1


def arc_type(d: Digraph, m: DistancePairMatrix, arc: tuple[int, int]) -> tuple[int, int]:
    """Type ``(1, r)`` of an arc, ``r`` the reverse distance."""
    u, v = arc
    if (u, v) not in d.arc_set:
        raise ValueError(f"({u}, {v}) is not an arc")
    return (1, int(m.forward[v, u]))


def arc_type_census(d: Digraph, m: DistancePairMatrix) -> dict[tuple[int, int], int]:
    """Map each arc type ``(1, r)`` to its per-vertex out-degree.

    Raises ``ValueError`` naming an offending vertex if any type's
    out-degree varies across vertices.
    """
    per_vertex: list[dict[tuple[int, int], int]] = []
    for u in range(d.n):
        counts: dict[tuple[int, int], int] = {}
        for v in d.out[u]:
            t = (1, int(m.forward[v, u]))
            counts[t] = counts.get(t, 0) + 1
        per_vertex.append(counts)
    ref = per_vertex[0]
    for u, counts in enumerate(per_vertex):
        if counts != ref:
            raise ValueError(f"digraph is not out-regular by arc type: vertex {u}")
    return dict(sorted(ref.items()))


def to_dot(d: Digraph, m: Optional[DistancePairMatrix] = None,
           comments: Sequence[str] = ()) -> str:
    """Render as DOT, one line per arc, sorted by (u, v).

    With a distance matrix the arcs carry their type as a label.
    """
    lines = ["digraph wdr {"]
    lines.append(f"  // vertices: {d.n}")
    for c in comments:
        lines.append(f"  // {c}")
    for u, v in sorted(d.arcs):
        if m is not None:
            r = int(m.forward[v, u])
            lines.append(f'  {u} -> {v} [label="(1,{r})"];')
        else:
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_ARC_RE = re.compile(r"^\s*(\d+)\s*->\s*(\d+)")
_VCOUNT_RE = re.compile(r"^\s*//\s*vertices:\s*(\d+)")


def parse_dot(text: str) -> Digraph:
    """Read back digraphs in the format produced by ``to_dot``."""
    arcs = []
    n_decl = None
    for line in text.splitlines():
        mv = _VCOUNT_RE.match(line)
        if mv:
            n_decl = int(mv.group(1))
            continue
        ma = _ARC_RE.match(line)
        if ma:
            arcs.append((int(ma.group(1)), int(ma.group(2))))
    if not arcs and n_decl is None:
        raise ValueError("no arcs found in DOT input")
    n = n_decl if n_decl is not None else max(max(u, v) for u, v in arcs) + 1
    return from_arcs(n, arcs)
