"""The generalized integral operator families as coefficient maps.

Both families act on f(z)^alpha = z^alpha + A_2 z^{alpha+1} + ... by
damping the k-th coefficient with a weight w_k and re-normalizing:

    J^beta = z^beta (1 + sum_{k>=2} w_k A_k(alpha) z^{k-1}),
    J      = z * (unit)^{1/beta}.

Family 1 uses the log kernel and w_k = ((beta+gamma)/(beta+gamma+k-1))^m;
family 2 uses the (1 - t/z)^{m-1} kernel, whose Gamma-ratio weight is
evaluated as the finite product prod_{i<m} (beta+gamma+i)/(beta+gamma+k-1+i)
(no Gamma function, valid for complex gamma).  A direct quadrature oracle
of the defining integrals cross-checks the coefficient maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import PoleInWeight
from .quadrature import integrate_unit_interval
from .salagean import salagean_ratio
from .series_core import (
    AnalyticElement,
    NormalizedFunction,
    TruncatedSeries,
    integrate_termwise,
    normalized_from_unit,
    series_pow_real,
)

DEFAULT_ORDER = 512


@dataclass(frozen=True)
class OperatorParams:
    """Parameters (alpha, beta, gamma, m, family); delta is derived.

    The defining constraint alpha + delta = beta + gamma is unviolable
    because delta is always computed from the other three.
    """

    alpha: float
    beta: float
    gamma: complex
    m: int = 1
    family: int = 1

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.beta <= 0:
            raise ValueError("beta must be > 0")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.family not in (1, 2):
            raise ValueError("family must be 1 or 2")
        re_g = complex(self.gamma).real
        if self.m == 1:
            # both families collapse to the plain integral operator
            if self.beta + re_g < 0:
                raise ValueError("the m = 1 operator requires beta + Re gamma >= 0")
        elif self.family == 1:
            if re_g < 0:
                raise ValueError("family 1 requires Re gamma >= 0")
        elif self.m - 1 + re_g < 0:
            raise ValueError("family 2 requires m - 1 + Re gamma >= 0")

    @property
    def delta(self) -> complex:
        return self.beta + complex(self.gamma) - self.alpha


class MuXi(NamedTuple):
    """The (mu, xi) pair of the level-lowering recurrence."""

    mu: complex
    xi: complex


def mu_xi(params: OperatorParams) -> MuXi:
    g = complex(params.gamma)
    if params.family == 1:
        return MuXi(g, params.beta + g)
    return MuXi(g + params.m - 1, params.beta + g + params.m - 1)


def weight_factor(params: OperatorParams, k: int) -> complex:
    """The coefficient damping factor w_k, k >= 2 (w_1 = 1 always)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return complex(_weights(params, k - 1)[k - 1])


def _weights(params: OperatorParams, top_index: int, m: Optional[int] = None) -> np.ndarray:
    """Vector of w_k for unit indices 0..top_index (index j holds w_{j+1})."""
    m = params.m if m is None else m
    bg = params.beta + complex(params.gamma)
    j = np.arange(top_index + 1)
    w = np.ones(top_index + 1, dtype=complex)
    if m == 0:
        return w
    if params.family == 1:
        denom = bg + j
        if np.any(np.abs(denom) < 1e-12):
            raise PoleInWeight("a weight denominator beta + gamma + k - 1 vanishes")
        w = (bg / denom) ** m
    else:
        for i in range(m):
            denom = bg + j + i
            if np.any(np.abs(denom) < 1e-12):
                raise PoleInWeight("a weight denominator beta + gamma + k - 1 + i vanishes")
            w = w * (bg + i) / denom
    return w


def f_power_alpha(f: NormalizedFunction, alpha: float) -> AnalyticElement:
    """f(z)^alpha = z^alpha (f/z)^alpha; unit coefficient j holds A_{j+1}(alpha)."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0 for the power expansion")
    return AnalyticElement(alpha, series_pow_real(f.unit_part(), alpha))


def apply_Jm_beta(
    f: NormalizedFunction, params: OperatorParams, m: Optional[int] = None
) -> AnalyticElement:
    """The raw beta-th power J_m^beta = z^beta (1 + sum w_k A_k z^{k-1}).

    ``m`` overrides the level (m = 0 returns f^alpha itself, the base of
    the recurrence).
    """
    m = params.m if m is None else m
    powered = f_power_alpha(f, params.alpha)
    w = _weights(params, powered.unit.order, m=m)
    unit = TruncatedSeries(powered.unit.coeffs * w)
    return AnalyticElement(params.beta, unit)


def apply_Jm(f: NormalizedFunction, params: OperatorParams) -> NormalizedFunction:
    """The normalized operator image J = z (J^beta / z^beta)^{1/beta}."""
    if params.alpha == 0:
        return normalized_from_unit(
            TruncatedSeries.constant(1.0, f.order - 1), closed_form=lambda z: z
        )
    jb = apply_Jm_beta(f, params)
    return normalized_from_unit(series_pow_real(jb.unit, 1.0 / params.beta))


def apply_J_eq2_beta(f: NormalizedFunction, params: OperatorParams) -> AnalyticElement:
    """The raw beta-th power of the m = 1 operator via termwise integration.

    Builds (beta+gamma) z^{-gamma} * int_0^z t^{delta-1} f(t)^alpha dt at
    the element level; structurally independent of the weight-map route
    behind apply_Jm_beta, so the two serve as mutual cross-checks.
    """
    if params.m != 1:
        raise ValueError("the direct integral route is defined for m = 1")
    powered = f_power_alpha(f, params.alpha)
    integrand = AnalyticElement(params.delta - 1.0 + params.alpha, powered.unit)
    primitive = integrate_termwise(integrand)
    bg = params.beta + complex(params.gamma)
    return primitive.scaled(bg).shifted(-complex(params.gamma))


def apply_J_eq2(f: NormalizedFunction, params: OperatorParams) -> NormalizedFunction:
    """The m = 1 normalized operator via the termwise-integration route."""
    if params.alpha == 0:
        return normalized_from_unit(
            TruncatedSeries.constant(1.0, f.order - 1), closed_form=lambda z: z
        )
    root = apply_J_eq2_beta(f, params).pow_real(1.0 / params.beta)
    return normalized_from_unit(root.unit)


def quadrature_oracle(
    f: NormalizedFunction,
    params: OperatorParams,
    z: complex,
    tol: float = 1e-9,
) -> complex:
    """Evaluate the defining integral of J_m^j at z by adaptive quadrature.

    The integral runs along the segment t = s z, s in (0, 1]; pulling out
    z^beta leaves a scalar integral of s^{beta+gamma-1} times the kernel
    times (f(sz)/(sz))^alpha, with only an integrable singularity at
    s = 0 (handled by geometric panel refinement).  Restricted to
    0 < |z| <= 0.5 so the series evaluation of the integrand is fully
    converged.
    """
    z = complex(z)
    if not 0 < abs(z) <= 0.5:
        raise ValueError("the quadrature oracle requires 0 < |z| <= 0.5")
    if params.alpha == 0:
        return z
    bg = params.beta + complex(params.gamma)
    m = params.m
    u_alpha = series_pow_real(f.unit_part(), params.alpha)
    if params.family == 1:
        prefactor = bg**m / math.factorial(m - 1)

        def kernel(s):
            return (-np.log(s)) ** (m - 1) if m > 1 else 1.0

    else:
        prefactor = complex(np.prod([bg + i for i in range(m)])) / math.factorial(m - 1)

        def kernel(s):
            return (1.0 - s) ** (m - 1) if m > 1 else 1.0

    exponent = bg - 1.0

    def integrand(s):
        return kernel(s) * np.exp(exponent * np.log(s)) * u_alpha(s * z)

    value = prefactor * integrate_unit_interval(integrand, tol=tol)
    return z * complex(value) ** (1.0 / params.beta)


def coefficient_residual(a: TruncatedSeries, b: TruncatedSeries) -> float:
    """Max per-coefficient difference, relative above unit magnitude.

    |a_k - b_k| / max(1, |a_k|, |b_k|): identical to the absolute residual
    while coefficients stay O(1), scale-invariant where they grow (double
    precision cannot hold an absolute 1e-9 against 1e+7 coefficients).
    """
    ca, cb = a.coeffs, b.coeffs
    n = min(ca.size, cb.size)
    ca, cb = ca[:n], cb[:n]
    scale = np.maximum(1.0, np.maximum(np.abs(ca), np.abs(cb)))
    return float(np.max(np.abs(ca - cb) / scale))


def check_recurrence7(
    f: NormalizedFunction, params: OperatorParams, order: int = 256
) -> float:
    """Residual of the level-lowering identity at series level.

    Checks mu J_m^beta + z (J_m^beta)' = xi J_{m-1}^beta coefficientwise
    (with J_0^beta = f^alpha) and returns the maximum residual per
    ``coefficient_residual``.
    """
    if params.alpha == 0:
        raise ValueError("the recurrence check needs alpha > 0")
    g = NormalizedFunction(f.series.truncated(order), f.closed_form)
    mu, xi = mu_xi(params)
    jm = apply_Jm_beta(g, params)
    jm1 = apply_Jm_beta(g, params, m=params.m - 1)
    # z d/dz of z^beta u is z^beta (beta u + z u'): all heads are beta
    lhs = mu * jm.unit + params.beta * jm.unit + jm.unit.zderiv()
    return coefficient_residual(lhs, xi * jm1.unit)


def ratio_relation8(
    f: NormalizedFunction, params: OperatorParams, n: int, order: int = 256
) -> float:
    """Residual of the ratio transfer law between consecutive levels.

    With p = A/B the level-n ratio of J_m^beta and C/D that of
    J_{m-1}^beta, the law C/D = p + z p' / (mu + p) is verified in the
    denominator-cleared form

        C B (mu B + A) = D (A (mu B + A) + z A' B - A z B'),

    which uses only series products; the nested divisions of the raw form
    lose several digits once the coefficients of A, B grow polynomially.
    """
    g = NormalizedFunction(f.series.truncated(order), f.closed_form)
    mu, _ = mu_xi(params)
    rm = salagean_ratio(apply_Jm_beta(g, params), n)
    rl = salagean_ratio(apply_Jm_beta(g, params, m=params.m - 1), n)
    a, b = rm.numerator.unit, rm.denominator.unit
    c, d = rl.numerator.unit, rl.denominator.unit
    mba = mu * b + a
    lhs = c * b * mba
    rhs = d * (a * mba + a.zderiv() * b - a * b.zderiv())
    return coefficient_residual(lhs, rhs)
