"""The iterated z*d/dz operator, its inverse, and ratio functionals.

On a monomial z^k the operator acts as multiplication by k^n, and on a
fractional-head element z^rho u(z) one application gives
z^rho (rho u + z u'), i.e. the unit coefficient at z^k picks up a factor
(rho + k).  Both rules are exact at coefficient level, so n-fold
application is a single vectorized scaling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series_core import (
    AnalyticElement,
    NormalizedFunction,
    TruncatedSeries,
    series_div,
)


def salagean_apply(e: AnalyticElement, n: int) -> AnalyticElement:
    """n-fold z*d/dz on z^rho u(z): unit coefficient u_k -> (rho + k)^n u_k."""
    if n < 0:
        raise ValueError("the operator level n must be a natural number")
    if n == 0:
        return e
    k = np.arange(e.unit.coeffs.size)
    return AnalyticElement(e.head, TruncatedSeries(e.unit.coeffs * (e.head + k) ** n))


def salagean_apply_normalized(f: NormalizedFunction, n: int) -> NormalizedFunction:
    """Eigen-action on a class-A series: a_k -> k^n a_k (a_1 stays 1)."""
    if n < 0:
        raise ValueError("the operator level n must be a natural number")
    c = f.series.coeffs
    k = np.arange(c.size)
    scaled = c * k.astype(float) ** n
    return NormalizedFunction(TruncatedSeries(scaled))


def salagean_inverse(f: NormalizedFunction, n: int) -> NormalizedFunction:
    """The inverse transform a_k -> a_k / k^n on class-A series."""
    if n < 0:
        raise ValueError("the operator level n must be a natural number")
    c = f.series.coeffs.copy()
    k = np.arange(c.size, dtype=float)
    c[1:] = c[1:] / k[1:] ** n
    return NormalizedFunction(TruncatedSeries(c))


@dataclass(frozen=True)
class SalageanRatio:
    """The ratio of consecutive operator images of one element.

    The heads of numerator and denominator coincide, so the ratio is an
    ordinary power series (``ratio_series``), with value head-exponent at
    z = 0 (equal to 1 for class-A inputs).
    """

    numerator: AnalyticElement
    denominator: AnalyticElement
    ratio_series: TruncatedSeries
    n: int


def salagean_ratio(e: AnalyticElement, n: int) -> SalageanRatio:
    """Ratio (n+1-fold image) / (n-fold image) at the unit-series level.

    The shared head z^rho cancels; the denominator unit is invertible
    whenever rho != 0 or n = 0 (its constant term is rho^n u_0).
    """
    num = salagean_apply(e, n + 1)
    den = salagean_apply(e, n)
    ratio = series_div(num.unit, den.unit)
    return SalageanRatio(num, den, ratio, n)


def ratio_of_normalized(f: NormalizedFunction, n: int) -> TruncatedSeries:
    """Membership functional of a class-A function as a series (value 1 at 0)."""
    return salagean_ratio(f.as_element(), n).ratio_series
