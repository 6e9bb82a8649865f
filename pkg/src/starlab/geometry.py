"""Numerical functionals on the disk: order estimation, membership,
subordination falsification, and the admissibility margin.

Everything here reports margins measured on finite grids, never proofs:
infima over the open disk are approached by circle scans at increasing
radii plus a linear extrapolation in (1 - r).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar
from shapely.geometry import LineString

from .errors import CurveSelfIntersection, OutsideRegime, TailTooLarge
from .salagean import salagean_ratio
from .series_core import NormalizedFunction, TruncatedSeries

MAX_TAIL = 1e-6
BOUNDARY_TOL = 1e-9
MEMBERSHIP_SLACK = -1e-2


@dataclass(frozen=True)
class GridSpec:
    """Circle-scan grid: radii, angular resolution, optional refinement."""

    radii: Tuple[float, ...] = (0.5, 0.9, 0.99)
    theta_count: int = 1024
    refine: bool = False

    def __post_init__(self):
        if any(not 0 < r < 1 for r in self.radii):
            raise ValueError("all radii must lie in (0, 1)")
        if list(self.radii) != sorted(self.radii):
            raise ValueError("radii must be increasing")
        if self.theta_count < 16:
            raise ValueError("theta_count must be >= 16")


@dataclass
class OrderEstimate:
    """Per-radius minima of Re(ratio) and the extrapolated boundary value."""

    per_radius_min: List[Tuple[float, float, float]]  # (r, min Re, argmin theta)
    extrapolated: float
    margin: Optional[float] = None
    monotone: bool = True


class RatioEvaluator:
    """Pointwise evaluator of a ratio power series, with a tail bound."""

    def __init__(self, series: TruncatedSeries):
        self.series = series

    def __call__(self, z):
        return self.series(z)

    def tail_bound(self, r: float) -> float:
        return self.series.tail_estimate(r)


def membership_ratio_evaluator(f: NormalizedFunction, n: int) -> RatioEvaluator:
    """Evaluator of the level-n membership functional of a class-A series."""
    return RatioEvaluator(salagean_ratio(f.as_element(), n).ratio_series)


def estimate_order(
    ratio: Callable[[np.ndarray], np.ndarray], grid: GridSpec
) -> OrderEstimate:
    """Minimum of Re(ratio) over each grid circle, extrapolated to r -> 1.

    If the evaluator exposes ``tail_bound``, the series tail at the
    largest radius must be below MAX_TAIL, else TailTooLarge is raised.
    The extrapolation is linear in (1 - r) through the last two radii.
    """
    rmax = grid.radii[-1]
    tail = getattr(ratio, "tail_bound", None)
    if tail is not None and tail(rmax) > MAX_TAIL:
        raise TailTooLarge(
            f"series tail bound {tail(rmax):.3e} exceeds {MAX_TAIL} at r = {rmax}"
        )
    thetas = np.linspace(0.0, 2.0 * np.pi, grid.theta_count, endpoint=False)
    per_radius: List[Tuple[float, float, float]] = []
    for r in grid.radii:
        vals = np.real(ratio(r * np.exp(1j * thetas)))
        i = int(np.argmin(vals))
        best_theta, best_val = float(thetas[i]), float(vals[i])
        if grid.refine:
            dtheta = 2.0 * np.pi / grid.theta_count
            res = minimize_scalar(
                lambda t: float(np.real(ratio(r * np.exp(1j * t)))),
                bounds=(best_theta - dtheta, best_theta + dtheta),
                method="bounded",
                options={"xatol": 1e-10},
            )
            if res.fun < best_val:
                best_theta, best_val = float(res.x), float(res.fun)
        per_radius.append((r, best_val, best_theta))
    mins = [m for _, m, _ in per_radius]
    monotone = all(mins[i + 1] <= mins[i] + 1e-12 for i in range(len(mins) - 1))
    if len(per_radius) >= 2:
        (r1, m1, _), (r2, m2, _) = per_radius[-2], per_radius[-1]
        e1, e2 = 1.0 - r1, 1.0 - r2
        extrapolated = m2 + (m1 - m2) * (0.0 - e2) / (e1 - e2)
    else:
        extrapolated = mins[-1]
    return OrderEstimate(per_radius, float(extrapolated), monotone=monotone)


def check_membership(
    f: NormalizedFunction,
    n: int,
    lam: float,
    grid: GridSpec = GridSpec(),
) -> float:
    """Margin of f against the level-n order-lambda membership condition.

    Nonnegative (or >= MEMBERSHIP_SLACK, given grid resolution) means
    numerically consistent with membership.
    """
    if not 0 <= lam < 1:
        raise ValueError("lambda must lie in [0, 1)")
    est = estimate_order(membership_ratio_evaluator(f, n), grid)
    return est.extrapolated - lam


@dataclass(frozen=True)
class SubordinationVerdict:
    consistent: bool
    witness: Optional[complex] = None
    radius: Optional[float] = None

    def __bool__(self) -> bool:
        return self.consistent


def _winding_numbers(points: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    """Winding number of the closed polyline ``vertices`` around each point."""
    d = vertices[None, :] - points[:, None]
    angles = np.angle(d[:, 1:] / d[:, :-1])
    return np.rint(np.sum(angles, axis=1) / (2.0 * np.pi)).astype(int)


def _distance_to_polyline(points: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    """Min distance from each point to the polyline's segments."""
    a = vertices[:-1]
    seg = vertices[1:] - a
    seg_sq = np.abs(seg) ** 2
    seg_sq[seg_sq == 0.0] = 1.0
    w = points[:, None] - a[None, :]
    t = np.clip((w * np.conj(seg[None, :])).real / seg_sq[None, :], 0.0, 1.0)
    return np.min(np.abs(w - t * seg[None, :]), axis=1)


def subordination_falsify(
    p: Callable[[np.ndarray], np.ndarray],
    q: Callable[[np.ndarray], np.ndarray],
    grid: GridSpec = GridSpec(),
    curve_samples: int = 4096,
    boundary_tol: float = BOUNDARY_TOL,
) -> SubordinationVerdict:
    """Necessary-condition test of p -< q for univalent q.

    Checks p(0) = q(0) and, for each grid radius, that every sampled
    p-value lies inside (winding number) or on (within boundary_tol,
    scaled) the sampled q-image Jordan curve.  The q-curve is monitored
    for self-intersection; a failure raises CurveSelfIntersection.
    Consistency is not a proof, but any violation is a genuine witness.
    """
    p0 = complex(np.asarray(p(np.zeros(1)))[0])
    q0 = complex(np.asarray(q(np.zeros(1)))[0])
    if abs(p0 - q0) > 1e-8:
        return SubordinationVerdict(False, witness=0.0, radius=0.0)
    for r in grid.radii:
        tq = np.linspace(0.0, 2.0 * np.pi, curve_samples + 1)
        curve = np.asarray(q(r * np.exp(1j * tq)))
        curve[-1] = curve[0]
        ring = LineString(np.column_stack([curve.real, curve.imag]))
        if not ring.is_simple:
            raise CurveSelfIntersection(
                f"q-image at r = {r} fails the injectivity monitor"
            )
        tp = np.linspace(0.0, 2.0 * np.pi, grid.theta_count, endpoint=False)
        zp = r * np.exp(1j * tp)
        pvals = np.asarray(p(zp))
        scale = 1.0 + float(np.max(np.abs(curve)))
        on_boundary = _distance_to_polyline(pvals, curve) <= boundary_tol * scale
        inside = _winding_numbers(pvals[~on_boundary], curve) != 0
        if not np.all(inside):
            bad = np.flatnonzero(~on_boundary)[np.argmin(inside)]
            return SubordinationVerdict(False, witness=complex(zp[bad]), radius=r)
    return SubordinationVerdict(True)


def admissibility_margin(mu: complex, lambda0: float, u2, v1):
    """lambda0 - Re psi on the boundary segment of condition (c).

    psi(u, v) = u + v/(mu + u) evaluated at u = lambda0 + (1-lambda0) u2 i,
    v = v1; requires 2 v1 <= -(1-lambda0)(1 + u2^2).  The margin is
    nonnegative whenever Re mu + lambda0 >= 0 (with the degenerate
    Re mu + lambda0 = 0 case giving exactly zero).
    """
    if not 0 <= lambda0 < 1:
        raise ValueError("lambda0 must lie in [0, 1)")
    mu = complex(mu)
    u2 = np.asarray(u2, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    bound = -0.5 * (1.0 - lambda0) * (1.0 + u2**2)
    if np.any(v1 > bound + 1e-12):
        raise OutsideRegime("v1 must satisfy 2 v1 <= -(1 - lambda0)(1 + u2^2)")
    a = mu.real + lambda0
    b = mu.imag + (1.0 - lambda0) * u2
    denom = a**2 + b**2
    with np.errstate(divide="ignore", invalid="ignore"):
        margin = np.where(a == 0.0, 0.0, -a * v1 / np.where(denom == 0.0, 1.0, denom))
    return margin[()] if margin.ndim == 0 else margin
