"""Report figures: curve-family panels and expansion residual decay."""
from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  backend must be pinned first

from .curves import HypotrochoidSpec, cusp_threshold, sample_curve
from .expansion import ExpansionReport

# keep the Software text chunk out of the PNG so repeated runs are identical
_PNG_METADATA = {"Software": None}


def render_curve_panels(
    path: str,
    ks: Sequence[int] = (2, 3, 4, 5),
    b_margin: float = 1.1,
    n_samples: int = 720,
    dpi: int = 150,
) -> str:
    """Panel per arm count, each curve at theta = 0 and b just above threshold."""
    if not ks:
        raise ValueError("need at least one arm count")
    rows = (len(ks) + 1) // 2
    cols = 1 if len(ks) == 1 else 2
    fig, axes = plt.subplots(rows, cols, figsize=(3.4 * cols, 3.4 * rows))
    flat = [axes] if rows * cols == 1 else list(axes.flat)
    for ax in flat[len(ks):]:
        ax.set_visible(False)
    for ax, k in zip(flat, ks):
        b = b_margin * cusp_threshold(k)["b_star"]
        samples = sample_curve(HypotrochoidSpec(k=k, b=b), n_samples)
        xs = [z.real for z in samples.points] + [samples.points[0].real]
        ys = [z.imag for z in samples.points] + [samples.points[0].imag]
        ax.plot(xs, ys, linewidth=1.2, color="#1f4e79")
        ax.set_aspect("equal")
        ax.set_title("k = %d, b = %.3f" % (k, b), fontsize=10)
        ax.tick_params(labelsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def render_decay_plot(path: str, reports: Sequence[ExpansionReport], dpi: int = 150) -> str:
    """Log-log residuals per report with the fitted decay slope in the legend."""
    if not reports:
        raise ValueError("need at least one report")
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for rep in reports:
        label = "%s k=%d M=%d slope %.2f" % (
            rep.kind, rep.k, rep.order_max, rep.decay_exponent,
        )
        ax.loglog(rep.eps_grid, rep.residuals, marker="o", markersize=3, label=label)
    ax.set_xlabel("eps")
    ax.set_ylabel("truncation residual")
    ax.grid(True, which="both", linewidth=0.3, alpha=0.5)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi, metadata=_PNG_METADATA)
    plt.close(fig)
    return path
