"""Figure rendering for the CLI report path. Files only, never interactive."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib
import matplotlib.colors
import matplotlib.patches

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analysis import RegionGrid  # noqa: E402
from .stats import PhaseBin, VisibilityEstimate  # noqa: E402


def _figure(width=5.0, height=None):
    golden_ratio = (math.sqrt(5) - 1.0) / 2.0
    if not height:
        height = width * golden_ratio
    return plt.subplots(figsize=(width, height))


def plot_region(grid: RegionGrid, path: str | Path) -> Path:
    """V-alpha plane: shaded where a no-leakage particle-or-wave theory fits."""
    fig, ax = _figure(4.5, 4.5)
    n = int(round(math.sqrt(len(grid.points))))
    # points are ordered V-major
    ok = np.array([p.compatible for p in grid.points], dtype=float).reshape(n, n).T
    half = 0.5 / (n - 1)
    cmap = matplotlib.colors.ListedColormap(["#fdae6b", "#9ecae1"])
    ax.imshow(ok, origin="lower", cmap=cmap, vmin=0, vmax=1, interpolation="nearest",
              extent=(-half, 1 + half, -half, 1 + half))
    handles = [
        matplotlib.patches.Patch(color="#9ecae1", label="particle-or-wave possible"),
        matplotlib.patches.Patch(color="#fdae6b", label="wave-and-particle or leakage"),
    ]
    ax.plot([0, 1], [0, 1], "k--", lw=0.8)
    (exp,) = ax.plot(grid.experiment.V, grid.experiment.alpha, marker="$\\oplus$", ms=14, color="k",
                     ls="none", label="experiment")
    ax.set_xlabel("visibility V")
    ax.set_ylabel(r"anticorrelation $\alpha$")
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.02, 1.02)
    ax.legend(handles=handles + [exp], loc="upper left", fontsize=7, framealpha=0.9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_fringe(bins: Sequence[PhaseBin], vis: VisibilityEstimate, path: str | Path) -> Path:
    fig, ax = _figure()
    phi = np.array([b.phase for b in bins])
    rate = np.array([b.rate for b in bins])
    err = np.sqrt(rate * (1 - rate) / np.array([b.gates for b in bins]))
    ax.errorbar(phi, rate, yerr=err, fmt="o", ms=3, label="detector 1 rate")
    x = np.linspace(0, 2 * np.pi, 400)
    amp = vis.raw_value * vis.mean_rate
    ax.plot(x, vis.mean_rate + amp * np.cos(x + vis.phase_offset), lw=1,
            label=f"fit, V = {vis.value:.3f}")
    ax.set_xlabel("phase (rad)")
    ax.set_ylabel("P(D1)")
    ax.set_ylim(0, 1)
    ax.legend(fontsize=7)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
