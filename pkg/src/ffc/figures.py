"""Optional matplotlib renderings of the statistics reports.

Each report command can drop a PNG next to its delimited output:
class-frequency bars, classes-per-fault box plots (from precomputed
five-number summaries), and the co-occurrence heat map.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from ffc.stats import CooccurrenceMatrix, Distribution, FrequencyTable


def save_frequency_figure(table: FrequencyTable, path: str | Path) -> Path:
    """Grouped bars: faults per class, one group per project."""
    path = Path(path)
    classes = list(table.rows[0].counts)
    fig, ax = plt.subplots(figsize=(max(6.0, 1.2 * len(classes)), 4.0))
    width = 0.8 / max(len(table.rows), 1)
    for k, row in enumerate(table.rows):
        xs = [i + k * width for i in range(len(classes))]
        ax.bar(xs, [row.counts[c] for c in classes], width=width,
               label="%s (n=%d)" % (row.project, row.total))
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(classes))])
    ax.set_xticklabels(classes)
    ax.set_ylabel("faults")
    ax.set_title("Fault-class frequencies")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_distribution_figure(dist: Distribution, path: str | Path) -> Path:
    """Box plots of classes-per-fault built from the five-number rows."""
    path = Path(path)
    stats = [
        {
            "label": row.project,
            "whislo": row.minimum,
            "q1": row.q1,
            "med": row.median,
            "q3": row.q3,
            "whishi": row.maximum,
            "fliers": [],
        }
        for row in dist.rows
    ]
    fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(stats)), 4.0))
    ax.bxp(stats, showfliers=False)
    ax.set_ylabel("classes per fault")
    ax.set_title("Distribution of fault-class counts")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_cooccurrence_figure(matrix: CooccurrenceMatrix, path: str | Path) -> Path:
    """Heat map of row-conditional co-occurrence percentages."""
    path = Path(path)
    n = len(matrix.classes)
    grid = [[matrix.pct(i, j) or 0.0 for j in range(n)] for i in range(n)]
    fig, ax = plt.subplots(figsize=(6.5, 5.5))
    image = ax.imshow(grid, cmap="viridis", vmin=0.0, vmax=100.0)
    ax.set_xticks(range(n))
    ax.set_yticks(range(n))
    ax.set_xticklabels(matrix.classes, rotation=45, ha="right")
    ax.set_yticklabels(matrix.classes)
    for i in range(n):
        for j in range(n):
            pct = matrix.pct(i, j)
            text = "" if pct is None else ("%d" % pct if pct == int(pct) else "%.1f" % pct)
            ax.text(j, i, text, ha="center", va="center", fontsize=8,
                    color="white" if (pct or 0) < 60 else "black")
    ax.set_title("Fault-class co-occurrence (% of row class)")
    fig.colorbar(image, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
