"""Constructors of test functions: extremal starlike members, random
positive-real-part functions from boundary atoms, and level-n members via
the inverse coefficient transform.

Random draws use discrete boundary measures (at most 16 unimodular atoms),
which give exact closed-form pointwise evaluators even at radii where a
truncated series would be doubtful.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .salagean import salagean_inverse
from .series_core import (
    NormalizedFunction,
    TruncatedSeries,
    normalized_from_unit,
    series_exp,
    series_pow_real,
)

DEFAULT_ORDER = 512
MAX_ATOMS = 16


@dataclass(frozen=True)
class HerglotzAtoms:
    """A convex combination of boundary kernels (1 + x z)/(1 - x z)."""

    weights: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        x = np.asarray(self.points, dtype=complex)
        if w.ndim != 1 or x.shape != w.shape or not 1 <= w.size <= MAX_ATOMS:
            raise ValueError(f"need 1..{MAX_ATOMS} matching weights and points")
        if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be positive and sum to 1")
        if np.any(np.abs(np.abs(x) - 1.0) > 1e-12):
            raise ValueError("atom points must be unimodular")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", x)


def random_atoms(seed: int, count: int = 8) -> HerglotzAtoms:
    """Seed-deterministic draw of boundary atoms (Dirichlet weights)."""
    rng = np.random.default_rng(np.uint64(seed))
    count = min(max(count, 1), MAX_ATOMS)
    w = rng.dirichlet(np.ones(count))
    x = np.exp(2j * np.pi * rng.random(count))
    return HerglotzAtoms(w, x)


def p_from_atoms(
    atoms: HerglotzAtoms, order: int = DEFAULT_ORDER
) -> Tuple[Callable, TruncatedSeries]:
    """Pointwise evaluator and series of p(z) = sum w_j (1+x_j z)/(1-x_j z).

    p(0) = 1 and Re p > 0 on the disk by construction.
    """
    w = atoms.weights
    x = atoms.points

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        xz = x * z[..., None]
        return np.sum(w * (1.0 + xz) / (1.0 - xz), axis=-1)[()]

    k = np.arange(order + 1)
    coeffs = 2.0 * np.sum(w[None, :] * x[None, :] ** k[:, None], axis=1)
    coeffs[0] = 1.0
    return evaluate, TruncatedSeries(coeffs)


def koebe_lambda(lam: float, order: int = DEFAULT_ORDER) -> NormalizedFunction:
    """The extremal order-lambda starlike function z (1-z)^{-2(1-lambda)}."""
    if not 0 <= lam < 1:
        raise ValueError("lambda must lie in [0, 1)")
    one_minus_z = np.zeros(order, dtype=complex)
    one_minus_z[0] = 1.0
    one_minus_z[1] = -1.0
    exponent = -2.0 * (1.0 - lam)
    unit = series_pow_real(TruncatedSeries(one_minus_z), exponent)

    def closed_form(z):
        return z * (1.0 - np.asarray(z, dtype=complex)) ** exponent

    return normalized_from_unit(unit, closed_form)


def starlike_from_p(p: TruncatedSeries, lam: float) -> NormalizedFunction:
    """Solve z f'/f = lambda + (1-lambda) p by f = z exp((1-lambda) int (p-1)/t)."""
    if p.coeffs[0] != 1.0:
        raise ValueError("p must satisfy p(0) = 1")
    if not 0 <= lam < 1:
        raise ValueError("lambda must lie in [0, 1)")
    k = np.arange(p.coeffs.size)
    integral = np.zeros(p.coeffs.size, dtype=complex)
    integral[1:] = (1.0 - lam) * p.coeffs[1:] / k[1:]
    return normalized_from_unit(series_exp(TruncatedSeries(integral)))


def sn_member(p: TruncatedSeries, lam: float, n: int) -> NormalizedFunction:
    """A level-n member: the inverse transform of an order-lambda starlike f."""
    if n < 0 or n > 6:
        raise ValueError("n must lie in 0..6 (higher levels are numerically inert)")
    return salagean_inverse(starlike_from_p(p, lam), n)


def random_sn_member(
    seed: int, lam: float, n: int, order: int = DEFAULT_ORDER, count: int = 8
) -> NormalizedFunction:
    """Seeded random member at level n, order lambda."""
    _, p = p_from_atoms(random_atoms(seed, count), order=order - 1)
    return sn_member(p, lam, n)
