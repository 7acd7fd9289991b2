"""Shared test utilities: naive recount oracle, random digraphs, shuffles."""

from collections import Counter
from random import Random

from wdrkit.digraph import Digraph, distance_pairs, from_arcs


def directed_cycle(n: int) -> Digraph:
    return from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def brute_force_is_wdr(d: Digraph) -> bool:
    """Naive triple-loop recount, independent of the analyzer internals."""
    m = distance_pairs(d)
    fwd = m.forward.tolist()
    n = d.n

    def entry(x, y):
        return (fwd[x][y], fwd[y][x])

    by_class: dict[tuple, list[tuple[int, int]]] = {}
    for x in range(n):
        for y in range(n):
            by_class.setdefault(entry(x, y), []).append((x, y))
    for pairs in by_class.values():
        ref = None
        for x, y in pairs:
            counts = Counter((entry(x, z), entry(z, y)) for z in range(n))
            if ref is None:
                ref = counts
            elif counts != ref:
                return False
    return True


def random_strongly_connected(rng: Random, n: int) -> Digraph:
    """A directed n-cycle plus random chords: always strongly connected."""
    arcs = [(i, (i + 1) % n) for i in range(n)]
    for _ in range(rng.randrange(0, 2 * n)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            arcs.append((u, v))
    return from_arcs(n, arcs)


def shuffled_copy(d: Digraph, rng: Random) -> tuple[Digraph, list[int]]:
    """Relabel vertices by a random permutation; returns (digraph, perm)."""
    perm = list(range(d.n))
    rng.shuffle(perm)
    arcs = [(perm[u], perm[v]) for u, v in d.arcs]
    return from_arcs(d.n, arcs), perm
