"""Truncated complex power series and fractional-head elements.

Everything downstream (operator coefficient maps, dominant construction,
membership functionals) is built on two value types:

* ``TruncatedSeries`` -- sum_{k=0..N} c_k z^k with the O(z^{N+1}) tail
  dropped.  Immutable, double-precision complex coefficients.
* ``AnalyticElement`` -- z^rho * u(z), a power series with a (possibly
  fractional, possibly complex) head exponent rho.  This is the shape of
  f(z)^alpha and of everything the iterated z*d/dz operator produces
  from it.

All branch-sensitive powers use the principal branch; the bases that
actually occur (z in the slit disk, 1-z with Re(1-z) > 0) never cross
the cut.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import (
    BranchPointAtZero,
    DivergentAtOrigin,
    LogarithmicTerm,
    NotUnitLeading,
    ZeroConstantTerm,
)

ArrayLike = Union[Sequence[complex], np.ndarray]

_ZERO_TOL = 1e-300


class TruncatedSeries:
    """A finite complex power series c_0 + c_1 z + ... + c_N z^N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: ArrayLike):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must form a nonempty 1-d sequence")
        if not np.all(np.isfinite(c.real)) or not np.all(np.isfinite(c.imag)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        self.coeffs = c

    # -- basic structure ------------------------------------------------

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def truncated(self, order: int) -> "TruncatedSeries":
        """Copy truncated (or zero-padded) to the given order."""
        n = order + 1
        if n <= self.coeffs.size:
            return TruncatedSeries(self.coeffs[:n])
        out = np.zeros(n, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return TruncatedSeries(out)

    @staticmethod
    def constant(value: complex, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return TruncatedSeries(c)

    @staticmethod
    def identity(order: int) -> "TruncatedSeries":
        """The series z (c_1 = 1, all else 0)."""
        c = np.zeros(order + 1, dtype=complex)
        if order >= 1:
            c[1] = 1.0
        return TruncatedSeries(c)

    # -- evaluation ------------------------------------------------------

    def __call__(self, z):
        """Horner evaluation; accepts scalars or numpy arrays."""
        return np.polyval(self.coeffs[::-1], z)

    def tail_estimate(self, z) -> float:
        """|c_N| |z|^N / (1 - |z|), a geometric-tail magnitude estimate."""
        r = np.abs(z)
        if np.any(r >= 1.0):
            raise ValueError("tail estimate requires |z| < 1")
        n = self.order
        return float(np.max(np.abs(self.coeffs[-1]) * r**n / (1.0 - r)))

    # -- calculus --------------------------------------------------------

    def differentiate(self) -> "TruncatedSeries":
        """d/dz, with the order dropping by one."""
        if self.order == 0:
            return TruncatedSeries([0.0])
        k = np.arange(1, self.coeffs.size)
        return TruncatedSeries(self.coeffs[1:] * k)

    def zderiv(self) -> "TruncatedSeries":
        """z * d/dz, order preserved (c_k -> k c_k)."""
        k = np.arange(self.coeffs.size)
        return TruncatedSeries(self.coeffs * k)

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.coeffs.size == other.coeffs.size
            and bool(np.all(self.coeffs == other.coeffs))
        )

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_add(self, other)
        return TruncatedSeries(self.coeffs + _const_like(other, self))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.coeffs.size, other.coeffs.size)
            return TruncatedSeries(self.coeffs[:n] - other.coeffs[:n])
        return TruncatedSeries(self.coeffs - _const_like(other, self))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_div(self, other)
        return TruncatedSeries(self.coeffs / complex(other))

    def __repr__(self) -> str:  # pragma: no cover
        head = np.array2string(self.coeffs[: min(5, self.coeffs.size)], precision=6)
        return f"TruncatedSeries(order={self.order}, coeffs={head}...)"


def _const_like(value, s: TruncatedSeries) -> np.ndarray:
    c = np.zeros(s.coeffs.size, dtype=complex)
    c[0] = complex(value)
    return c


def _aligned(a: TruncatedSeries, b: TruncatedSeries):
    n = min(a.coeffs.size, b.coeffs.size)
    return a.coeffs[:n], b.coeffs[:n], n


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficient-wise sum; the lesser truncation order is adopted."""
    ca, cb, _ = _aligned(a, b)
    return TruncatedSeries(ca + cb)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the lesser order."""
    ca, cb, n = _aligned(a, b)
    return TruncatedSeries(np.convolve(ca, cb)[:n])


def series_div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient q with q * b = a up to the (lesser) truncation order."""
    ca, cb, n = _aligned(a, b)
    b0 = cb[0]
    if abs(b0) < _ZERO_TOL:
        raise ZeroConstantTerm("division by a series with vanishing constant term")
    q = np.empty(n, dtype=complex)
    q[0] = ca[0] / b0
    for k in range(1, n):
        q[k] = (ca[k] - np.dot(cb[1 : k + 1], q[k - 1 :: -1])) / b0
    return TruncatedSeries(q)


def _as_unit_leading(c: np.ndarray, who: str) -> np.ndarray:
    """Return c with c[0] snapped to exactly 1, or raise NotUnitLeading."""
    if c[0] == 1.0:
        return c
    if abs(c[0] - 1.0) > 1e-12:
        raise NotUnitLeading(f"{who} requires u(0) = 1, got {c[0]}")
    c = c.copy()
    c[0] = 1.0
    return c


def series_exp(u: TruncatedSeries) -> TruncatedSeries:
    """Formal exponential, truncated at u's order."""
    c = u.coeffs
    n = c.size
    ju = c * np.arange(n)
    e = np.empty(n, dtype=complex)
    e[0] = np.exp(c[0])
    for k in range(1, n):
        e[k] = np.dot(ju[1 : k + 1], e[k - 1 :: -1]) / k
    return TruncatedSeries(e)


def series_log(u: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm of a unit-leading series (u(0) = 1)."""
    c = _as_unit_leading(u.coeffs, "series_log")
    n = c.size
    out = np.zeros(n, dtype=complex)
    for k in range(1, n):
        jl = out[1:k] * np.arange(1, k)
        out[k] = c[k] - (np.dot(jl, c[k - 1 : 0 : -1]) / k if k > 1 else 0.0)
    return TruncatedSeries(out)


def series_pow_real(u: TruncatedSeries, t: float) -> TruncatedSeries:
    """u^t for unit-leading u via the convolution recurrence.

    b_0 = 1 and k b_k = sum_{j=1..k} (t j - (k - j)) u_j b_{k-j}; one pass,
    O(N^2), no exp/log round trip.
    """
    c = _as_unit_leading(u.coeffs, "series_pow_real")
    n = c.size
    t = float(t)
    if t == 1.0:
        return TruncatedSeries(c)
    if t == 0.0:
        return TruncatedSeries.constant(1.0, u.order)
    ju = c * np.arange(n)
    b = np.empty(n, dtype=complex)
    b[0] = 1.0
    for k in range(1, n):
        rev = b[k - 1 :: -1]
        s1 = np.dot(ju[1 : k + 1], rev)
        s2 = np.dot(c[1 : k + 1], np.arange(k - 1, -1, -1) * rev)
        b[k] = (t * s1 - s2) / k
    return TruncatedSeries(b)


class AnalyticElement:
    """z^head * unit(z) with a real or complex head exponent.

    The canonical case has unit(0) = 1 (this is how f(z)^alpha and all of
    its z*d/dz images look); intermediate results of termwise integration
    may carry a different leading coefficient, so the unit-leading
    condition is checked only by the operations that need it.
    """

    __slots__ = ("head", "unit")

    def __init__(self, head: complex, unit: TruncatedSeries):
        self.head = complex(head)
        self.unit = unit

    @property
    def order(self) -> int:
        return self.unit.order

    def is_unit_leading(self) -> bool:
        return self.unit.coeffs[0] == 1.0

    def scaled(self, factor: complex) -> "AnalyticElement":
        return AnalyticElement(self.head, self.unit * factor)

    def shifted(self, exponent: complex) -> "AnalyticElement":
        """Multiply by z^exponent (head shift only)."""
        return AnalyticElement(self.head + complex(exponent), self.unit)

    def pow_real(self, t: float) -> "AnalyticElement":
        """(z^rho u)^t = z^{rho t} u^t, principal branch at the unit level."""
        return AnalyticElement(self.head * t, series_pow_real(self.unit, t))

    def eval(self, z):
        return element_eval(self, z)

    def tail_estimate(self, z) -> float:
        return self.unit.tail_estimate(z)

    def __repr__(self) -> str:  # pragma: no cover
        return f"AnalyticElement(head={self.head}, order={self.order})"


def element_eval(e: AnalyticElement, z):
    """Evaluate z^head * unit(z) on the principal branch.

    Scalars and arrays are accepted; z = 0 is only legal when the head is
    a nonnegative real (z^0 = 1, z^rho = 0 for Re rho > 0).
    """
    zarr = np.asarray(z, dtype=complex)
    scalar = zarr.ndim == 0
    zs = np.atleast_1d(zarr)
    rho = e.head
    out = np.empty(zs.shape, dtype=complex)
    zero = zs == 0
    if np.any(zero):
        if rho == 0:
            out[zero] = e.unit.coeffs[0]
        elif rho.real > 0 and rho.imag == 0:
            out[zero] = 0.0
        else:
            raise BranchPointAtZero(
                f"z^({rho}) is singular or branch-ambiguous at z = 0"
            )
    nz = ~zero
    if np.any(nz):
        out[nz] = np.exp(rho * np.log(zs[nz])) * e.unit(zs[nz])
    return out[()] if scalar else out.reshape(zarr.shape)


def integrate_termwise(e: AnalyticElement) -> AnalyticElement:
    """Termwise antiderivative of z^rho u(z) from 0.

    The coefficient c_k at total exponent rho + k maps to
    c_k / (rho + k + 1) at head rho + 1.
    """
    rho = e.head
    if rho.real <= -1.0:
        raise DivergentAtOrigin(f"head {rho} is not integrable at the origin")
    k = np.arange(e.unit.coeffs.size)
    denom = rho + k + 1.0
    if np.any(np.abs(denom) < 1e-12):
        raise LogarithmicTerm("a term with total exponent -1 integrates to a log")
    return AnalyticElement(rho + 1.0, TruncatedSeries(e.unit.coeffs / denom))


class NormalizedFunction:
    """A class-A function f(z) = z + a_2 z^2 + ... as a truncated series.

    Optionally carries a closed-form pointwise evaluator for
    boundary-accurate evaluation.
    """

    __slots__ = ("series", "closed_form")

    def __init__(
        self,
        series: TruncatedSeries,
        closed_form: Optional[Callable] = None,
    ):
        c = series.coeffs
        if c.size < 2:
            raise ValueError("a normalized function needs order >= 1")
        if abs(c[0]) > 1e-9 or abs(c[1] - 1.0) > 1e-9:
            raise ValueError("normalization requires c_0 = 0 and c_1 = 1")
        if c[0] != 0.0 or c[1] != 1.0:
            # snap rounding dust so the class invariant is exact
            cc = c.copy()
            cc[0] = 0.0
            cc[1] = 1.0
            series = TruncatedSeries(cc)
        self.series = series
        self.closed_form = closed_form

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def coeffs(self) -> np.ndarray:
        return self.series.coeffs

    def as_element(self) -> AnalyticElement:
        """f = z * (f/z) as a head-1 element with unit-leading unit part."""
        return AnalyticElement(1.0, TruncatedSeries(self.series.coeffs[1:]))

    def unit_part(self) -> TruncatedSeries:
        """The series f(z)/z (constant term 1)."""
        return TruncatedSeries(self.series.coeffs[1:])

    def __call__(self, z):
        return self.series(z)

    def __repr__(self) -> str:  # pragma: no cover
        return f"NormalizedFunction(order={self.order})"


def normalized_from_unit(
    unit: TruncatedSeries, closed_form: Optional[Callable] = None
) -> NormalizedFunction:
    """Build z * unit(z) as a NormalizedFunction (unit(0) must be 1)."""
    if abs(unit.coeffs[0] - 1.0) > 1e-9:
        raise NotUnitLeading("normalized functions need a unit-leading z-cofactor")
    c = np.zeros(unit.coeffs.size + 1, dtype=complex)
    c[1:] = unit.coeffs
    return NormalizedFunction(TruncatedSeries(c), closed_form)
