"""Optional figures for coverage reports and (b, r, v, s) tables (matplotlib, Agg backend)."""
from __future__ import annotations

from typing import Sequence

_COLORS = {"covered": "#4c9a2a", "uncovered": "#c0392b", "undecided": "#e0a800"}


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def cover_figure(report, path: str) -> None:
    """One bar per residue, colored by status, height = number of contributing families."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(max(6, report.modulus * 0.08), 3))
    xs = [e.residue for e in report.residues]
    hs = [max(len(e.families), 0.3) for e in report.residues]
    ax.bar(xs, hs, color=[_COLORS[e.status] for e in report.residues], width=0.8)
    ax.set_xlabel(f"n mod {report.modulus}")
    ax.set_ylabel("families")
    ax.set_title(f"coverage mod {report.modulus}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def brvs_figure(rows: Sequence, path: str) -> None:
    """Witness parameters b and s against the prime w."""
    plt = _pyplot()
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(7, 4.5))
    ws = [r.w for r in rows]
    top.scatter(ws, [r.b for r in rows], s=6)
    top.set_ylabel("b")
    bottom.scatter(ws, [r.s for r in rows], s=6, color="#8e44ad")
    bottom.set_ylabel("s")
    bottom.set_yscale("log")
    bottom.set_xlabel("w")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
