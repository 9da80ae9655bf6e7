"""Figure rendering for smoothing and interpolation results.

One figure layout serves every command: raw samples as a thin marked
line, smoothed nodes as filled squares, and the fitted model as a dense
curve.  Callers pass whichever layers they have.  The Agg backend is
forced so rendering works headless; files are written wherever the
caller points, alongside the delimited output.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .series import TimeSeries

__all__ = ["render_figure"]


def render_figure(
    path: str,
    series: TimeSeries | None = None,
    nodes=None,
    curve=None,
    title: str | None = None,
) -> None:
    """Render any combination of samples, nodes, and model curve to ``path``.

    ``curve`` takes (t, value, imag_residual) rows as produced by
    evaluate_grid; the imaginary residual is not drawn.
    """
    if series is None and not nodes and not curve:
        raise ValueError("nothing to plot")
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    if series is not None:
        ax.plot(series.t, series.values, "o-", color="0.6", linewidth=1.0,
                markersize=4, label="samples")
    if curve:
        ax.plot([row[0] for row in curve], [row[1] for row in curve],
                color="tab:blue", linewidth=1.5, label="exponential model")
    if nodes:
        ax.plot([n.x for n in nodes], [n.y for n in nodes], "s",
                color="tab:red", markersize=5, label="smoothed nodes")
    ax.set_xlabel("t")
    ax.set_ylabel("value")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
