"""Delimited output and figure rendering for the report-producing commands."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .census import CensusCatalogue
from .sweep import LAW_GAMMA_QSK, SweepRow, sweep_header, sweep_table


def write_sweep_csv(rows: list[SweepRow], law: str, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(sweep_header(law))
        writer.writerows(sweep_table(rows, law))


def sweep_figure(rows: list[SweepRow], law: str, path: Path) -> None:
    """Agreement grid: one panel per q (or a strip over g).

    Cell colours: dark where the instance is regular, light where it is
    not; disagreements (none expected) are drawn red.
    """
    if law == LAW_GAMMA_QSK:
        qs = sorted({r.params[0] for r in rows})
        fig, axes = plt.subplots(1, len(qs), figsize=(4.2 * len(qs), 4.0), squeeze=False)
        for ax, q in zip(axes[0], qs):
            sub = [r for r in rows if r.params[0] == q]
            ss = sorted({r.params[1] for r in sub})
            ks = sorted({r.params[2] for r in sub})
            grid = np.full((len(ks), len(ss)), np.nan)
            for r in sub:
                i = ks.index(r.params[2])
                j = ss.index(r.params[1])
                if not r.agree:
                    grid[i, j] = 2.0
                else:
                    grid[i, j] = 1.0 if r.is_wdr else 0.0
            cmap = matplotlib.colors.ListedColormap(["#d8dee9", "#2d6a4f", "#d62828"])
            ax.imshow(grid, cmap=cmap, vmin=0, vmax=2, origin="lower", aspect="auto")
            ax.set_xticks(range(len(ss)), [str(s) for s in ss], fontsize=7)
            ax.set_yticks(range(len(ks)), [str(k) for k in ks])
            ax.set_xlabel("s")
            ax.set_ylabel("k")
            ax.set_title(f"q = {q}")
        fig.suptitle("regularity vs. closed-form law (dark = regular)")
    else:
        fig, ax = plt.subplots(figsize=(6.0, 2.4))
        gs = [r.params[0] for r in rows]
        vals = [1.0 if r.is_wdr else 0.0 for r in rows]
        colors = ["#2d6a4f" if r.agree else "#d62828" for r in rows]
        ax.bar(gs, [1.0] * len(gs), color=["#d8dee9"] * len(gs))
        ax.bar(gs, vals, color=colors)
        ax.set_xticks(gs)
        ax.set_xlabel("g")
        ax.set_yticks([])
        ax.set_title("regular members of the 4g-vertex family (dark bars)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_census_csv(cat: CensusCatalogue, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["order", "moduli", "connection_set", "multiplicity", "matched_family"])
        for c in cat.classes:
            writer.writerow([
                c.order,
                "x".join(str(m) for m in c.representative.moduli),
                " ".join("(" + ",".join(str(a) for a in s) + ")"
                         for s in c.representative.connection_set),
                c.multiplicity,
                c.matched_family or "UNMATCHED",
            ])


def census_figure(cat: CensusCatalogue, path: Path) -> None:
    """Matched/unmatched isomorphism classes per group order."""
    orders = list(range(1, cat.max_order + 1))
    matched = [0] * len(orders)
    unmatched = [0] * len(orders)
    for c in cat.classes:
        if c.matched_family is None:
            unmatched[c.order - 1] += 1
        else:
            matched[c.order - 1] += 1
    fig, ax = plt.subplots(figsize=(7.0, 3.2))
    ax.bar(orders, matched, color="#2d6a4f", label="matched")
    ax.bar(orders, unmatched, bottom=matched, color="#d62828", label="unmatched")
    ax.set_xlabel("group order")
    ax.set_ylabel("isomorphism classes")
    ax.set_title("census classes vs. classified families")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
