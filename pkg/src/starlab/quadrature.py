"""Adaptive composite Gauss-Legendre on (0, 1] with endpoint refinement.

Panels are subdivided geometrically toward s = 0 so that integrable
endpoint singularities (fractional powers, log kernels) are resolved by
refinement rather than node placement; the Gauss nodes never touch the
endpoints themselves.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import QuadratureNonConvergence

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _level_nodes(level: int):
    """Flattened Gauss nodes/weights for the geometric panel set of a level."""
    breaks = np.concatenate(([0.0], 2.0 ** -np.arange(level, -1, -1.0)))
    a = breaks[:-1]
    b = breaks[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    s = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return s, w


def integrate_unit_interval(
    g: Callable[[np.ndarray], np.ndarray],
    tol: float = 1e-12,
    max_levels: int = 20,
    min_level: int = 3,
):
    """Integrate g over (0, 1], refining geometrically toward 0.

    ``g`` must be vectorized along its first axis; extra trailing axes
    (e.g. a batch of evaluation points) are integrated simultaneously.
    Raises QuadratureNonConvergence if successive refinements still
    differ by more than ``tol`` after ``max_levels`` levels.
    """
    previous = None
    for level in range(min_level, max_levels + 1):
        s, w = _level_nodes(level)
        vals = np.asarray(g(s))
        current = np.tensordot(w, vals, axes=(0, 0))
        if previous is not None:
            scale = 1.0 + float(np.max(np.abs(current)))
            if float(np.max(np.abs(current - previous))) <= tol * scale:
                return current
        previous = current
    raise QuadratureNonConvergence(
        f"no convergence to {tol} within {max_levels} refinement levels"
    )
