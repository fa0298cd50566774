"""Figures for centrality reports.

Uses the object-oriented matplotlib API with the Agg canvas, so nothing
here touches the global pyplot state or needs a display.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .centrality import MEASURE_NAMES


def plot_scores(report, path, title: str | None = None, width: float = 8.0) -> Path:
    """Grouped bar chart, one group per node and one bar per applicable measure."""
    measures = [m for m, r in report.measures.items() if r.applicable]
    nodes = list(report.nodes)
    height = width * (np.sqrt(5) - 1.0) / 2.0
    fig = Figure(figsize=(width, height), facecolor="w")
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    x = np.arange(len(nodes))
    bar = 0.8 / max(len(measures), 1)
    for k, m in enumerate(measures):
        scores = report.measures[m].scores
        values = [scores.get(v, np.nan) for v in nodes]
        ax.bar(x + (k - (len(measures) - 1) / 2) * bar, values, bar, label=f"c_{m}")
    ax.set_xticks(x)
    ax.set_xticklabels(nodes, rotation=45 if len(nodes) > 12 else 0)
    ax.set_ylim(0, 1.05)
    ax.set_xlabel("node")
    ax.set_ylabel("centrality (max = 1)")
    if title:
        ax.set_title(title)
    if measures:
        ax.legend(fontsize="small", ncol=min(len(measures), 4), loc="lower right",
                  title=None, frameon=False)
    missing = [MEASURE_NAMES[m] for m, r in report.measures.items() if not r.applicable]
    if missing:
        fig.text(0.01, 0.01, "not applicable: " + ", ".join(missing), fontsize="x-small")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    return path
