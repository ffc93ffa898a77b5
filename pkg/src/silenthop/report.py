"""Figure rendering for sweep results: delivery probability against jamming rate."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import message_delivery_prob
from .errors import ParameterError


def render_sweep_figure(points, out_path, dpi=150) -> None:
    """Plot simulated rates (errorbars spanning q05..q95) with the closed-form curves.

    One series per (codeword_length, message_length) pair found in the points.
    """
    if not points:
        raise ParameterError("no sweep points to plot")
    groups = {}
    for p in points:
        groups.setdefault((p.codeword_length, p.message_length), []).append(p)

    fig, ax = plt.subplots(figsize=(7.0, 4.8))
    for (n, lm), group in sorted(groups.items()):
        group = sorted(group, key=lambda p: p.jam_prob)
        pa = np.array([p.jam_prob for p in group])
        q50 = np.array([p.q50 for p in group])
        q05 = np.array([p.q05 for p in group])
        q95 = np.array([p.q95 for p in group])
        err = np.vstack([np.maximum(q50 - q05, 0.0), np.maximum(q95 - q50, 0.0)])
        handle = ax.errorbar(pa, q50, yerr=err, fmt="o", capsize=3, markersize=4,
                             label=f"sim n={n}, Lm={lm}")
        grid = np.linspace(pa.min(), pa.max(), 256)
        ax.plot(grid, [message_delivery_prob(x, n, lm) for x in grid],
                "--", color=handle.lines[0].get_color(), linewidth=1.0,
                label=f"theory n={n}, Lm={lm}")
    ax.set_xlabel("proactive jamming probability")
    ax.set_ylabel("message delivery probability")
    ax.set_ylim(-0.03, 1.03)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
