"""Figure rendering for the report path (matplotlib, file output only)."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .dominants import DominantCurve


def plot_dominant_curve(curve: DominantCurve, path: str) -> None:
    """Render the boundary image of the dominant next to its Re trace."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    ax1.plot(curve.samples.real, curve.samples.imag, lw=1.0)
    ax1.axvline(float(np.min(curve.samples.real)), color="tab:red", ls="--", lw=0.8)
    ax1.set_xlabel("Re q")
    ax1.set_ylabel("Im q")
    ax1.set_title(f"q-image of |z| = {curve.r}")
    ax1.set_aspect("equal", adjustable="datalim")
    ax2.plot(curve.thetas, curve.samples.real, lw=1.0)
    ax2.set_xlabel("theta")
    ax2.set_ylabel("Re q")
    ax2.set_title("boundary real part")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_margins(
    labels: Sequence[str], margins: Sequence[float], path: str, threshold: float = 0.0
) -> None:
    """Bar chart of membership margins against the pass threshold."""
    fig, ax = plt.subplots(figsize=(max(6, 0.35 * len(margins)), 4))
    x = np.arange(len(margins))
    colors = ["tab:blue" if m >= threshold else "tab:red" for m in margins]
    ax.bar(x, margins, color=colors)
    ax.axhline(threshold, color="black", lw=0.8, ls="--")
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=90, fontsize=6)
    ax.set_ylabel("margin")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_residuals(labels: Sequence[str], residuals: Sequence[float], path: str, tol: float) -> None:
    """Log-scale scatter of structural residuals against the tolerance."""
    fig, ax = plt.subplots(figsize=(7, 4))
    x = np.arange(len(residuals))
    ax.semilogy(x, np.maximum(np.asarray(residuals, dtype=float), 1e-18), ".", ms=4)
    ax.axhline(tol, color="tab:red", ls="--", lw=0.8)
    ax.set_xlabel("sweep index")
    ax.set_ylabel("residual")
    ax.set_title(", ".join(dict.fromkeys(labels)) if labels else "residuals")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
