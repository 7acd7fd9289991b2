"""The two parametric digraph families, their closed-form distances,
regularity classification, isomorphism targets and counterexample probes.

Family one ("gamma-g") is the Cayley digraph on ``Z4 x Zg`` with
connection set ``{(1,0), (0,1), (2,1)}``.  Family two ("gamma-qsk") is
an explicitly wired digraph on ``Zq x Zs`` of out-valency three whose
weak distance-regularity depends on ``(q, s, k)`` only through three
regularity conditions C1, C2, C3.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .digraph import Digraph, DistancePairMatrix, distance_pairs, from_arcs


class GrammarError(ValueError):
    """A construction string does not parse."""


@dataclass(frozen=True)
class CayleySpec:
    """Cyclic-product group plus connection set, all residues reduced.

    ``moduli`` are the cyclic factor orders; vertices are numbered
    row-major over the factors.  The identity must not appear in the
    connection set and the set members must be pairwise distinct.
    """

    moduli: tuple[int, ...]
    connection_set: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.moduli or any(m < 1 for m in self.moduli):
            raise ValueError(f"moduli must be positive: {self.moduli}")
        reduced = []
        for s in self.connection_set:
            if len(s) != len(self.moduli):
                raise ValueError(f"connection element {s} does not match moduli {self.moduli}")
            reduced.append(tuple(a % m for a, m in zip(s, self.moduli)))
        if len(set(reduced)) != len(reduced):
            raise ValueError("connection set has repeated elements")
        zero = tuple(0 for _ in self.moduli)
        if zero in reduced:
            raise ValueError("identity element in connection set")
        if not reduced:
            raise ValueError("connection set is empty")
        object.__setattr__(self, "connection_set", tuple(sorted(reduced)))

    @property
    def order(self) -> int:
        n = 1
        for m in self.moduli:
            n *= m
        return n

    def to_string(self) -> str:
        mods = ",".join(str(m) for m in self.moduli)
        gens = "".join("(" + ",".join(str(a) for a in s) + ")" for s in self.connection_set)
        return f"cayley:mods={mods};set={gens}"


def _tuple_index(moduli: tuple[int, ...]):
    """Row-major numbering maps between tuples and vertex ids."""
    def to_index(t):
        v = 0
        for a, m in zip(t, moduli):
            v = v * m + (a % m)
        return v
    return to_index


def cayley(spec: CayleySpec) -> Digraph:
    """Cayley digraph: arcs ``x -> s + x`` for every connection element.

    Raises ``ValueError`` when the connection set does not generate the
    group (the digraph would not be strongly connected).
    """
    mods = spec.moduli
    to_index = _tuple_index(mods)
    verts = list(itertools.product(*[range(m) for m in mods]))
    arcs = []
    for v in verts:
        base = to_index(v)
        for s in spec.connection_set:
            w = tuple((a + b) % m for a, b, m in zip(v, s, mods))
            arcs.append((base, to_index(w)))
    d = from_arcs(spec.order, arcs,
                  labels=["(" + ",".join(str(a) for a in v) + ")" for v in verts],
                  name=spec.to_string())
    # semigroup closure equals subgroup closure in a finite group, so
    # one forward reachability check decides generation
    reached = {0}
    frontier = [0]
    out = d.out
    while frontier:
        nxt = []
        for u in frontier:
            for w in out[u]:
                if w not in reached:
                    reached.add(w)
                    nxt.append(w)
        frontier = nxt
    if len(reached) != d.n:
        raise ValueError("connection set does not generate the group")
    return d


def gamma_g(g: int) -> Digraph:
    """The family-one digraph on ``Z4 x Zg`` (4g vertices, valency 3)."""
    if g < 3:
        raise ValueError(f"g must be at least 3, got {g}")
    spec = CayleySpec(moduli=(4, g), connection_set=((1, 0), (0, 1), (2, 1)))
    d = cayley(spec)
    return Digraph(n=d.n, out=d.out, labels=d.labels, name=f"gamma-g:g={g}")


def gamma_g_distance(g: int, ab: tuple[int, int]) -> tuple[int, int]:
    """Closed-form two-way distance from (0,0) in the family-one digraph.

    For ``b = 0`` the pair is ``(a, 4 - a)``; otherwise it is
    ``(b + beta, g - b + beta)`` where ``beta`` is 1 for odd ``a`` and 0
    for even ``a``.  The all-zero vertex is rejected.
    """
    if g < 3:
        raise ValueError(f"g must be at least 3, got {g}")
    a, b = ab[0] % 4, ab[1] % g
    if (a, b) == (0, 0):
        raise ValueError("distance from the base vertex to itself is not defined here")
    if b == 0:
        return (a, 4 - a)
    beta = a % 2
    return (b + beta, g - b + beta)


def valid_k_range(q: int, s: int) -> tuple[int, int]:
    """Inclusive bounds for ``k`` given ``q`` and ``s``."""
    return (max(1, q - s + 2), q)


@dataclass(frozen=True)
class GammaQskParams:
    """Validated ``(q, s, k)`` with the derived split ``s = 2*m*q + p``."""

    q: int
    s: int
    k: int
    m: int = field(init=False)
    p: int = field(init=False)

    def __post_init__(self):
        if self.q <= 2:
            raise ValueError(f"q must exceed 2, got {self.q}")
        if self.s <= 2:
            raise ValueError(f"s must exceed 2, got {self.s}")
        lo, hi = valid_k_range(self.q, self.s)
        if not (lo <= self.k <= hi):
            raise ValueError(f"k={self.k} outside [{lo}, {hi}] for q={self.q}, s={self.s}")
        object.__setattr__(self, "m", self.s // (2 * self.q))
        object.__setattr__(self, "p", self.s % (2 * self.q))

    @property
    def order(self) -> int:
        return self.q * self.s

    def to_string(self) -> str:
        return f"gamma-qsk:q={self.q},s={self.s},k={self.k}"


def gamma_qsk(params: GammaQskParams) -> Digraph:
    """The family-two digraph on ``Zq x Zs``.

    Out-arcs of ``(a, b)``: always ``(a+1, b)``; then ``(a, b+1)`` for
    ``b != s-1`` else ``(a-k+1, 0)``; then ``(a+1, b-1)`` for ``b != 0``
    else ``(a+k, s-1)``.
    """
    q, s, k = params.q, params.s, params.k
    arcs = []
    for a in range(q):
        for b in range(s):
            u = a * s + b
            arcs.append((u, ((a + 1) % q) * s + b))
            if b != s - 1:
                arcs.append((u, a * s + b + 1))
            else:
                arcs.append((u, ((a - k + 1) % q) * s + 0))
            if b != 0:
                arcs.append((u, ((a + 1) % q) * s + b - 1))
            else:
                arcs.append((u, ((a + k) % q) * s + s - 1))
    labels = [f"({a},{b})" for a in range(q) for b in range(s)]
    return from_arcs(q * s, arcs, labels=labels, name=params.to_string())


def gamma_qsk_distance(params: GammaQskParams, ab: tuple[int, int]) -> tuple[int, int]:
    """Closed-form two-way distance from (0,0) in the family-two digraph.

    With ``f = (a+b-k-p+1) mod q``, ``g = (q-a-b) mod q`` and
    ``h = (k-a-1) mod q`` the pair is
    ``(min(a+b, s-b+f), min(b+g, s-b+h))``; the zero vertex maps to (0,0).
    """
    q, s, k, p = params.q, params.s, params.k, params.p
    a, b = ab[0] % q, ab[1] % s
    if (a, b) == (0, 0):
        return (0, 0)
    f = (a + b - k - p + 1) % q
    g = (q - a - b) % q
    h = (k - a - 1) % q
    return (min(a + b, s - b + f), min(b + g, s - b + h))


def base_point_automorphism(params: GammaQskParams, ab: tuple[int, int]) -> list[int]:
    """Vertex permutation carrying (0,0) to ``ab``.

    ``(x, y) -> (x+a, y+b)`` when ``y`` stays within ``0 .. s-1-b``
    without wrapping, else ``(x+a-k+1, y+b)``.
    """
    q, s, k = params.q, params.s, params.k
    a, b = ab[0] % q, ab[1] % s
    perm = [0] * (q * s)
    for x in range(q):
        for y in range(s):
            if y <= s - 1 - b:
                xx = (x + a) % q
            else:
                xx = (x + a - k + 1) % q
            yy = (y + b) % s
            perm[x * s + y] = xx * s + yy
    return perm


def classify_c123(params: GammaQskParams) -> Optional[str]:
    """Which of the three regularity conditions holds, if any.

    C1: p = 0 and k = 1.  C2: p in {q+2, 2} and k = q.
    C3: 4 <= p <= 2q-2 with p even and k = q+1-p/2.
    """
    q, k, p = params.q, params.k, params.p
    if p == 0 and k == 1:
        return "C1"
    if p in (q + 2, 2) and k == q:
        return "C2"
    if 4 <= p <= 2 * q - 2 and p % 2 == 0 and k == q + 1 - p // 2:
        return "C3"
    return None


@dataclass(frozen=True)
class IsoMap:
    """Explicit vertex bijection between a source digraph and a Cayley target."""

    source: str
    target: CayleySpec
    mapping: tuple[int, ...]


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise AssertionError(f"{what} is not integral: {x}")
    return int(x)


def cayley_iso_target(params: GammaQskParams) -> IsoMap:
    """Cayley digraph isomorphic to a regular family-two instance.

    C1 keeps the coordinates: target ``Cay(Zq x Zs, {(1,0),(0,1),(1,s-1)})``.
    C2 flattens row-major onto ``Cay(Z_{qs}, {1, s, s-1})``.
    C3 rescales through the 2-adic part of ``gcd(q, p)``.
    Raises ``ValueError`` when no condition holds.
    """
    cond = classify_c123(params)
    if cond is None:
        raise ValueError(f"({params.q},{params.s},{params.k}) satisfies none of C1/C2/C3")
    q, s, k, p = params.q, params.s, params.k, params.p
    if cond == "C1":
        target = CayleySpec(moduli=(q, s), connection_set=((1, 0), (0, 1), (1, s - 1)))
        mapping = tuple(range(q * s))
    elif cond == "C2":
        target = CayleySpec(moduli=(q * s,), connection_set=((1,), (s % (q * s),), ((s - 1) % (q * s),)))
        mapping = tuple(range(q * s))  # row-major index equals the cyclic element
    else:
        g0 = gcd(q, p)
        d = Fraction(p, 2 * g0)
        l = 0
        while g0 % (2 ** (l + 1)) == 0:
            l += 1
        h = s // (2 ** l)
        i = 0 if d.denominator == 1 else 1
        modulus = (2 ** i) * q
        u = next(uu for uu in range(modulus + 1) if (uu * p - g0) % modulus == 0)
        c = _as_int(Fraction(2 ** i) * u * d, "generator coefficient")
        mods = (modulus, s // (2 ** i))
        gens = (
            ((2 ** i) % mods[0], (i * h) % mods[1]),
            (c % mods[0], 1 % mods[1]),
            ((2 ** i - c) % mods[0], (i * h - 1) % mods[1]),
        )
        target = CayleySpec(moduli=mods, connection_set=gens)
        mapping = [0] * (q * s)
        for a in range(q):
            for b in range(s):
                first = ((2 ** i) * a + c * b) % mods[0]
                second = (i * h * a + b) % mods[1]
                mapping[a * s + b] = first * mods[1] + second
        mapping = tuple(mapping)
    return IsoMap(source=params.to_string(), target=target, mapping=mapping)


def admissible_u_values(params: GammaQskParams, count: int = 2) -> list[int]:
    """First few nonnegative ``u`` usable in the C3 target construction."""
    if classify_c123(params) != "C3":
        raise ValueError("u values only arise for C3 parameters")
    q, p = params.q, params.p
    g0 = gcd(q, p)
    d = Fraction(p, 2 * g0)
    i = 0 if d.denominator == 1 else 1
    modulus = (2 ** i) * q
    found = []
    uu = 0
    while len(found) < count and uu <= count * modulus + modulus:
        if (uu * p - g0) % modulus == 0:
            found.append(uu)
        uu += 1
    return found


def cayley_iso_target_with_u(params: GammaQskParams, u: int) -> IsoMap:
    """C3 target built from a caller-chosen admissible ``u``."""
    if classify_c123(params) != "C3":
        raise ValueError("explicit u only applies to C3 parameters")
    q, s, p = params.q, params.s, params.p
    g0 = gcd(q, p)
    d = Fraction(p, 2 * g0)
    l = 0
    while g0 % (2 ** (l + 1)) == 0:
        l += 1
    h = s // (2 ** l)
    i = 0 if d.denominator == 1 else 1
    modulus = (2 ** i) * q
    if (u * p - g0) % modulus != 0:
        raise ValueError(f"u={u} is not admissible")
    c = _as_int(Fraction(2 ** i) * u * d, "generator coefficient")
    mods = (modulus, s // (2 ** i))
    gens = (
        ((2 ** i) % mods[0], (i * h) % mods[1]),
        (c % mods[0], 1 % mods[1]),
        ((2 ** i - c) % mods[0], (i * h - 1) % mods[1]),
    )
    target = CayleySpec(moduli=mods, connection_set=gens)
    mapping = [0] * (q * s)
    for a in range(q):
        for b in range(s):
            first = ((2 ** i) * a + c * b) % mods[0]
            second = (i * h * a + b) % mods[1]
            mapping[a * s + b] = first * mods[1] + second
    return IsoMap(source=params.to_string(), target=target, mapping=tuple(mapping))


@dataclass(frozen=True)
class ProbePair:
    """Two vertices sharing a two-way distance but separated by a path count.

    ``probe`` lies in the count set of ``(e, x)`` for the relation pair
    ``((1, q), pair(probe, x))`` while the matching set of ``(e, y)`` is
    empty; ``case`` records which parameter regime produced it.
    """

    case: int
    x: tuple[int, int]
    y: tuple[int, int]
    probe: tuple[int, int]


def counterexample_probe(params: GammaQskParams) -> ProbePair:
    """Vertices witnessing irregularity for parameters outside C1/C2/C3."""
    if classify_c123(params) is not None:
        raise ValueError(f"({params.q},{params.s},{params.k}) is regular; no probe")
    q, s, k, m, p = params.q, params.s, params.k, params.m, params.p
    t = p // q
    alpha = lambda v: Fraction(3 + (-1) ** v, 4)

    def vertex(x1: Fraction | int, x2: Fraction | int) -> tuple[int, int]:
        return (_as_int(Fraction(x1), "first coordinate") % q,
                _as_int(Fraction(x2), "second coordinate") % s)

    if k != q:
        lo = 2 * ((-1) ** t * alpha(p) + 1) + q * t
        hi = 2 * (q - alpha(p) + 1)
        if lo < 2 * k + p <= hi:
            x = vertex(0, alpha(s) + Fraction(s, 2))
            y = vertex(q + alpha(p) + 1 - k - Fraction(p, 2), (m - 1) * q + p + k - 1)
            return ProbePair(case=1, x=x, y=y, probe=(0, 1))
        if 2 * k + p <= lo or 2 * (q - alpha(p) + 2) <= 2 * k + p:
            x = vertex(k, alpha(s) - 1 + Fraction(s, 2))
            y = vertex(k, alpha(s) + Fraction(s, 2))
            return ProbePair(case=2, x=x, y=y, probe=(k % q, s - 1))
        raise AssertionError(f"parameter gap reached for ({q},{s},{k})")
    if 3 <= p <= q + 1:
        x = vertex(q - 2, m * q + 2)
        y = vertex(q - 2, m * q + 1)
        return ProbePair(case=3, x=x, y=y, probe=(0, 1))
    if p <= 1 or p >= q + 3:
        x = vertex(q - 1, m * q - t * q + p)
        y = vertex(0, m * q + t * q)
        return ProbePair(case=4, x=x, y=y, probe=(0, 1))
    raise AssertionError(f"parameter gap reached for ({q},{s},{k})")


def confirm_probe(params: GammaQskParams, d: Optional[Digraph] = None,
                  m_pairs: Optional[DistancePairMatrix] = None) -> bool:
    """Check a probe numerically against BFS distances and path counts."""
    from .scheme import count_paths, relation_partition

    probe = counterexample_probe(params)
    if d is None:
        d = gamma_qsk(params)
    if m_pairs is None:
        m_pairs = distance_pairs(d)
    part = relation_partition(m_pairs)
    s = params.s
    e = 0
    vx = probe.x[0] * s + probe.x[1]
    vy = probe.y[0] * s + probe.y[1]
    vz = probe.probe[0] * s + probe.probe[1]
    if m_pairs.entry(e, vx) != m_pairs.entry(e, vy):
        return False
    if m_pairs.entry(e, vz) != (1, params.q):
        return False
    i = part.id_of((1, params.q))
    j = part.id_of(m_pairs.entry(vz, vx))
    cx = count_paths(part, i, j, e, vx)
    cy = count_paths(part, i, j, e, vy)
    return cx >= 1 and cy == 0


def theorem_families(order_bound: int) -> list[tuple[str, Digraph]]:
    """All classified family members with at most ``order_bound`` vertices.

    Family one contributes every ``g`` with ``g = 3`` or ``g >= 5``;
    family two contributes the C1, C2 and C3 parameter lines.  Members
    isomorphic to an earlier entry are dropped; entries are sorted by
    (order, label).
    """
    from .iso import are_isomorphic

    if order_bound < 1:
        raise ValueError("order bound must be positive")
    raw: list[tuple[int, str, Digraph]] = []
    g = 3
    while 4 * g <= order_bound:
        if g != 4:
            raw.append((4 * g, f"gamma-g:g={g}", gamma_g(g)))
        g += 1
    q = 3
    while 4 * q <= order_bound:
        mm = 1
        while q * (2 * mm * q) <= order_bound:
            pr = GammaQskParams(q, 2 * mm * q, 1)
            raw.append((pr.order, pr.to_string(), gamma_qsk(pr)))
            mm += 1
        mm = 1
        while q * (mm * q + 2) <= order_bound:
            pr = GammaQskParams(q, mm * q + 2, q)
            raw.append((pr.order, pr.to_string(), gamma_qsk(pr)))
            mm += 1
        mm = 1
        while q * (2 * mm * q - 2 * q + 4) <= order_bound:
            for t in range(2, q):
                s = 2 * mm * q - 2 * q + 2 * t
                if s > 2 and q * s <= order_bound:
                    pr = GammaQskParams(q, s, q + 1 - t)
                    raw.append((pr.order, pr.to_string(), gamma_qsk(pr)))
            mm += 1
        q += 1
    raw.sort(key=lambda r: (r[0], r[1]))
    kept: list[tuple[int, str, Digraph]] = []
    for order, label, d in raw:
        duplicate = False
        for korder, _, kd in kept:
            if korder == order and are_isomorphic(kd, d) is not None:
                duplicate = True
                break
        if not duplicate:
            kept.append((order, label, d))
    return [(label, d) for _, label, d in kept]


_GAMMA_G_RE = re.compile(r"^gamma-g:g=(-?\d+)$")
_GAMMA_QSK_RE = re.compile(r"^gamma-qsk:q=(-?\d+),s=(-?\d+),k=(-?\d+)$")
_CAYLEY_RE = re.compile(r"^cayley:mods=([0-9,\-]+);set=((?:\([0-9,\-]+\))+)$")
_TUPLE_RE = re.compile(r"\(([0-9,\-]+)\)")


def parse_construction(text: str) -> Digraph:
    """Build a digraph from a construction string.

    Grammar: ``gamma-g:g=<int>``, ``gamma-qsk:q=<int>,s=<int>,k=<int>``,
    ``cayley:mods=<int>,..;set=(<int>,..)(<int>,..)..``.  Syntax problems
    raise ``GrammarError``; out-of-range parameters raise ``ValueError``.
    """
    text = text.strip()
    m = _GAMMA_G_RE.match(text)
    if m:
        return gamma_g(int(m.group(1)))
    m = _GAMMA_QSK_RE.match(text)
    if m:
        return gamma_qsk(GammaQskParams(int(m.group(1)), int(m.group(2)), int(m.group(3))))
    m = _CAYLEY_RE.match(text)
    if m:
        try:
            mods = tuple(int(x) for x in m.group(1).split(","))
            gens = tuple(tuple(int(x) for x in body.split(","))
                         for body in _TUPLE_RE.findall(m.group(2)))
        except ValueError as exc:
            raise GrammarError(f"bad cayley construction string: {text}") from exc
        return cayley(CayleySpec(moduli=mods, connection_set=gens))
    raise GrammarError(f"unrecognised construction string: {text!r}")
