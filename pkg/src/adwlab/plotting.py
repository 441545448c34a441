"""Figure rendering for error curves.

Uses the Agg backend so figures render headless, straight to files.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

plt.rcParams.update({
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 130,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
})


def save_error_curve_figure(
    rows: Sequence[tuple[float, float, float]],
    m: int,
    scenario_name: str,
    path: str,
) -> str:
    """Render a log-log error curve with its rate reference; returns path."""
    ts = [r[0] for r in rows]
    errs = [r[1] for r in rows]
    bounds = [r[2] for r in rows]
    fig, ax = plt.subplots()
    ax.loglog([1.0 + t for t in ts], errs, color="tab:blue",
              label=f"order-{m} expansion error")
    if any(b > 0 for b in bounds):
        ax.loglog([1.0 + t for t in ts], bounds, color="tab:gray",
                  linestyle="--", label=f"$(1+t)^{{-{m}-1/2}}$ reference")
    ax.set_xlabel("1 + t")
    ax.set_ylabel("L2 error")
    ax.set_title(f"{scenario_name}: expansion error, m = {m}")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
