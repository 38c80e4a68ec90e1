"""Microstructure drawing: one column per variable, one vertex per value,
an edge for every binary tuple whose cost is not bottom."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .model import Vcsp  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "softarc",  # stable ids so repeated runs give identical files
}


def _layout(v: Vcsp) -> dict[tuple[int, int], tuple[float, float]]:
    pos = {}
    for i, dom in enumerate(v.domains):
        for a in range(len(dom)):
            pos[(i, a)] = (float(i), -float(a))
    return pos


def draw_microstructure(v: Vcsp, ax=None, title: str | None = None):
    s = v.structure
    pos = _layout(v)
    with plt.rc_context(STYLE):
        if ax is None:
            width = max(3.0, 1.6 * v.n)
            height = max(2.4, 0.9 * v.d + 1.2)
            _, ax = plt.subplots(figsize=(width, height))
        skipped = 0
        for p in v.scopes():
            if len(p) != 2:
                skipped += 1
                continue
            i, j = p
            c = v.constraints[p]
            for (a, b), cost in zip(c.tuples(), c.dense()):
                if cost == s.bottom:
                    continue
                (x0, y0), (x1, y1) = pos[(i, a)], pos[(j, b)]
                forbidden = cost == s.top
                ax.plot([x0, x1], [y0, y1], color="firebrick" if forbidden else "0.35",
                        lw=1.4 if forbidden else 1.0, ls="--" if forbidden else "-", zorder=1)
                # offset the label along the edge to keep crossings readable
                tx, ty = x0 + 0.3 * (x1 - x0), y0 + 0.3 * (y1 - y0)
                ax.text(tx, ty, s.format(cost), fontsize=7, ha="center", va="center",
                        bbox=dict(boxstyle="round,pad=0.1", fc="white", ec="none"), zorder=2)
        for (i, a), (x, y) in pos.items():
            cost = v.unary[i][a]
            ax.scatter([x], [y], s=220, color="white", edgecolors="black", zorder=3)
            ax.text(x, y, v.domains[i][a], ha="center", va="center", zorder=4)
            if cost != s.bottom:
                ax.text(x - 0.18, y + 0.18, s.format(cost), fontsize=7, color="navy",
                        ha="right", va="bottom", zorder=4)
        ax.set_xticks(range(v.n))
        ax.set_xticklabels(v.names)
        ax.set_yticks([])
        ax.spines["left"].set_visible(False)
        ax.set_xlim(-0.6, v.n - 0.4)
        ax.set_ylim(-v.d + 0.4, 0.7)
        label = title or s.describe()
        if skipped:
            label += f" ({skipped} non-binary constraint(s) not drawn)"
        ax.set_title(label)
    return ax


def save_microstructure(v: Vcsp, path: str | Path, title: str | None = None) -> Path:
    path = Path(path)
    with plt.rc_context(STYLE):
        ax = draw_microstructure(v, title=title)
        fig = ax.figure
        fig.tight_layout()
        meta = {"Date": None} if path.suffix.lower() in (".svg", ".pdf") else {}
        fig.savefig(path, metadata=meta)
        plt.close(fig)
    return path
