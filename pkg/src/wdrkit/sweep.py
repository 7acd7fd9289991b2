"""Parameter sweeps comparing computed regularity against the closed laws."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .families import GammaQskParams, classify_c123, gamma_g, gamma_qsk, valid_k_range
from .scheme import analyze

SWEEP_BUDGET = 10_000

LAW_GAMMA_G = "prop2.1"
LAW_GAMMA_QSK = "prop2.4"


@dataclass(frozen=True)
class SweepSpec:
    """Inclusive ranges; ``law`` selects which family and law to sweep."""

    law: str
    q_range: tuple[int, int] = (3, 5)
    s_range: tuple[int, int] = (3, 20)
    k_range: tuple[int, int] = (1, 5)
    g_range: tuple[int, int] = (3, 10)
    jobs: int = 1

    def __post_init__(self):
        if self.law not in (LAW_GAMMA_G, LAW_GAMMA_QSK):
            raise ValueError(f"unknown law {self.law!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        for lo, hi in (self.q_range, self.s_range, self.k_range, self.g_range):
            if lo > hi:
                raise ValueError(f"empty range {lo}:{hi}")


@dataclass(frozen=True)
class SweepRow:
    params: tuple[int, ...]
    condition: Optional[str]
    is_wdr: bool
    expected_wdr: bool

    @property
    def agree(self) -> bool:
        return self.is_wdr == self.expected_wdr


def _qsk_tuples(spec: SweepSpec) -> list[GammaQskParams]:
    tuples = []
    for q in range(max(3, spec.q_range[0]), spec.q_range[1] + 1):
        for s in range(max(3, spec.s_range[0]), spec.s_range[1] + 1):
            lo, hi = valid_k_range(q, s)
            for k in range(max(lo, spec.k_range[0]), min(hi, spec.k_range[1]) + 1):
                tuples.append(GammaQskParams(q, s, k))
    return tuples


def _row_qsk(pr: GammaQskParams) -> SweepRow:
    cond = classify_c123(pr)
    rep = analyze(gamma_qsk(pr), fail_fast=True)
    return SweepRow(params=(pr.q, pr.s, pr.k), condition=cond,
                    is_wdr=rep.is_wdr, expected_wdr=cond is not None)


def _row_g(g: int) -> SweepRow:
    rep = analyze(gamma_g(g), fail_fast=True)
    return SweepRow(params=(g,), condition=None if g == 4 else "WDR",
                    is_wdr=rep.is_wdr, expected_wdr=g != 4)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every tuple in the box; rows come back in input order."""
    if spec.law == LAW_GAMMA_QSK:
        work = _qsk_tuples(spec)
        worker = _row_qsk
    else:
        work = list(range(max(3, spec.g_range[0]), spec.g_range[1] + 1))
        worker = _row_g
    if len(work) > SWEEP_BUDGET:
        raise ValueError(f"sweep of {len(work)} tuples exceeds budget {SWEEP_BUDGET}")
    if not work:
        return []
    if spec.jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(spec.jobs) as pool:
            return list(pool.map(worker, work))
    return [worker(w) for w in work]


def sweep_header(law: str) -> list[str]:
    if law == LAW_GAMMA_QSK:
        return ["q", "s", "k", "condition", "is_wdr", "agree"]
    return ["g", "condition", "is_wdr", "agree"]


def sweep_table(rows: list[SweepRow], law: str) -> list[list[str]]:
    table = []
    for row in rows:
        cells = [str(v) for v in row.params]
        cells.append(row.condition if row.condition is not None else "none")
        cells.append(str(row.is_wdr).lower())
        cells.append(str(row.agree).lower())
        table.append(cells)
    return table
