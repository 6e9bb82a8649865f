"""Tests for the integral-operator coefficient maps, the quadrature
oracle, and the structural identities between consecutive levels."""

import numpy as np
import pytest

from starlab import (
    NormalizedFunction,
    OperatorParams,
    TruncatedSeries,
    apply_J_eq2,
    apply_J_eq2_beta,
    apply_Jm,
    apply_Jm_beta,
    check_recurrence7,
    coefficient_residual,
    f_power_alpha,
    koebe_lambda,
    mu_xi,
    quadrature_oracle,
    ratio_relation8,
    weight_factor,
)
from starlab.errors import PoleInWeight
from starlab.genfun import random_sn_member

ORDER = 128


def identity_function(order: int = ORDER) -> NormalizedFunction:
    c = np.zeros(order + 1, dtype=complex)
    c[1] = 1.0
    return NormalizedFunction(TruncatedSeries(c))


class TestOperatorParams:
    def test_delta_is_derived(self):
        p = OperatorParams(1.0, 2.0, 0.5 + 1.0j)
        assert p.delta == pytest.approx(2.0 + 0.5 + 1.0j - 1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            OperatorParams(-0.1, 1.0, 0.0)
        with pytest.raises(ValueError):
            OperatorParams(1.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            OperatorParams(1.0, 1.0, 0.0, m=0)
        with pytest.raises(ValueError):
            OperatorParams(1.0, 1.0, 0.0, family=3)
        # m = 1 needs beta + Re gamma >= 0 only
        OperatorParams(1.0, 1.0, -0.5, m=1, family=1)
        with pytest.raises(ValueError):
            OperatorParams(1.0, 1.0, -1.5, m=1, family=1)
        # deeper family-1 levels need Re gamma >= 0
        with pytest.raises(ValueError):
            OperatorParams(1.0, 1.0, -0.5, m=2, family=1)
        # family 2 needs m - 1 + Re gamma >= 0
        OperatorParams(1.0, 1.0, -0.5, m=2, family=2)
        with pytest.raises(ValueError):
            OperatorParams(1.0, 1.0, -1.5, m=2, family=2)

    def test_mu_xi(self):
        p1 = OperatorParams(1.0, 2.0, 0.5, m=3, family=1)
        assert mu_xi(p1) == (0.5, 2.5)
        p2 = OperatorParams(1.0, 2.0, 0.5, m=3, family=2)
        assert mu_xi(p2) == (2.5, 4.5)


class TestWeights:
    def test_family1_closed_form(self):
        p = OperatorParams(1.0, 2.0, 1.0, m=3, family=1)
        assert weight_factor(p, 5) == pytest.approx((3.0 / 7.0) ** 3)

    def test_family2_finite_product(self):
        p = OperatorParams(1.0, 2.0, 1.0, m=2, family=2)
        # prod_{i<2} (bg + i)/(bg + k - 1 + i) with bg = 3, k = 4
        assert weight_factor(p, 4) == pytest.approx((3.0 / 6.0) * (4.0 / 7.0))

    def test_leading_weight_is_one(self):
        for family in (1, 2):
            p = OperatorParams(1.0, 1.5, 0.7, m=2, family=family)
            assert weight_factor(p, 1) == pytest.approx(1.0)

    @pytest.mark.parametrize("family", [1, 2])
    def test_positivity_and_monotonicity(self, family):
        p = OperatorParams(1.0, 1.5, 0.7, m=2, family=family)
        w = np.array([weight_factor(p, k).real for k in range(1, 40)])
        assert np.all(w > 0) and np.all(w <= 1.0)
        assert np.all(np.diff(w) < 0)

    def test_pole_in_weight(self):
        # beta + gamma + k - 1 = 0 at k = 2 for gamma = -1 - beta + ... use
        # complex gamma to slip past validation: bg = 1e-13
        p = OperatorParams(1.0, 1.0, -1.0 + 1e-13, m=1, family=1)
        with pytest.raises(PoleInWeight):
            apply_Jm_beta(koebe_lambda(0.0, 16), p)


class TestOperatorMaps:
    def test_fixed_point_z(self):
        f = identity_function()
        for family in (1, 2):
            for m in (1, 2, 3):
                p = OperatorParams(1.0, 2.0, 0.5, m=m, family=family)
                img = apply_Jm(f, p)
                assert np.max(np.abs(img.coeffs - f.coeffs)) < 1e-14

    def test_alpha_zero_maps_to_z(self):
        f = koebe_lambda(0.0, ORDER)
        p = OperatorParams(0.0, 1.0, 0.5, m=1, family=1)
        img = apply_Jm(f, p)
        assert np.max(np.abs(img.coeffs - identity_function().coeffs)) < 1e-14

    def test_alexander_transform_is_exact(self):
        # alpha = beta = 1, gamma = 0: J = int f/t, Koebe -> z/(1-z)
        f = koebe_lambda(0.0, ORDER)
        img = apply_Jm(f, OperatorParams(1.0, 1.0, 0.0, 1, 1))
        assert np.max(np.abs(img.coeffs[1:] - 1.0)) < 1e-12

    def test_m1_family_collapse(self):
        f = random_sn_member(5, 0.0, 0, order=ORDER)
        for alpha, beta, gamma in [(1.0, 1.0, 0.0), (2.0, 1.5, 0.7), (0.5, 2.0, 1.3)]:
            p1 = OperatorParams(alpha, beta, gamma, 1, 1)
            p2 = OperatorParams(alpha, beta, gamma, 1, 2)
            j1 = apply_Jm(f, p1).series
            j2 = apply_Jm(f, p2).series
            assert coefficient_residual(j1, j2) < 1e-11
            b1 = apply_Jm_beta(f, p1).unit
            b3 = apply_J_eq2_beta(f, p1).unit
            assert coefficient_residual(b1, b3) < 1e-11
            j3 = apply_J_eq2(f, p1).series
            assert coefficient_residual(j1, j3) < 1e-8

    def test_eq2_route_rejects_higher_levels(self):
        f = koebe_lambda(0.0, 16)
        with pytest.raises(ValueError):
            apply_J_eq2(f, OperatorParams(1.0, 1.0, 0.0, 2, 1))

    def test_complex_gamma_supported(self):
        f = random_sn_member(9, 0.0, 0, order=ORDER)
        p = OperatorParams(1.0, 1.0, 1.0 + 1.0j, m=2, family=2)
        img = apply_Jm(f, p)
        assert img.coeffs[1] == 1.0
        assert np.all(np.isfinite(img.coeffs))


class TestQuadratureOracle:
    def test_koebe_alexander_closed_form(self):
        f = koebe_lambda(0.0, 256)
        p = OperatorParams(1.0, 1.0, 0.0, 1, 1)
        z = 0.3
        assert quadrature_oracle(f, p, z) == pytest.approx(z / (1.0 - z), abs=1e-9)

    def test_identity_is_fixed(self):
        f = identity_function(64)
        p = OperatorParams(1.0, 1.5, 0.5, m=2, family=1)
        assert quadrature_oracle(f, p, 0.4) == pytest.approx(0.4, abs=1e-9)

    def test_matches_series_map_family2(self):
        f = koebe_lambda(0.0, 256)
        p = OperatorParams(1.0, 2.0, 0.5, m=3, family=2)
        z = 0.25
        series_value = apply_Jm(f, p)(z)
        assert abs(quadrature_oracle(f, p, z) - series_value) < 1e-6

    def test_matches_series_map_family1_complex_point(self):
        f = random_sn_member(3, 0.0, 0, order=256)
        p = OperatorParams(1.0, 1.0, 1.0, m=2, family=1)
        z = 0.3 * np.exp(1.1j)
        series_value = apply_Jm(f, p)(z)
        assert abs(quadrature_oracle(f, p, z) - series_value) < 1e-6

    def test_domain_guard(self):
        f = koebe_lambda(0.0, 64)
        p = OperatorParams(1.0, 1.0, 0.0, 1, 1)
        with pytest.raises(ValueError):
            quadrature_oracle(f, p, 0.8)
        with pytest.raises(ValueError):
            quadrature_oracle(f, p, 0.0)


class TestStructuralIdentities:
    def test_recurrence_trivial_for_z(self):
        f = identity_function()
        p = OperatorParams(1.0, 2.0, 1.0, m=2, family=1)
        assert check_recurrence7(f, p, order=ORDER) == 0.0

    @pytest.mark.parametrize("family,m", [(1, 1), (1, 3), (2, 1), (2, 3)])
    def test_recurrence_random_starlike(self, family, m):
        f = random_sn_member(21, 0.0, 0, order=ORDER)
        p = OperatorParams(1.0, 2.0, 1.0, m=m, family=family)
        assert check_recurrence7(f, p, order=ORDER) < 1e-10

    def test_ratio_transfer_trivial_for_z(self):
        f = identity_function()
        p = OperatorParams(1.0, 2.0, 1.0, m=2, family=2)
        assert ratio_relation8(f, p, 1, order=ORDER) == 0.0

    def test_ratio_transfer_koebe_m1(self):
        f = koebe_lambda(0.0, 256)
        p = OperatorParams(1.0, 1.0, 0.0, 1, 1)
        assert ratio_relation8(f, p, 0, order=256) < 1e-9

    def test_ratio_transfer_level2(self):
        f = random_sn_member(33, 0.0, 2, order=256)
        p = OperatorParams(1.0, 1.0, 0.5, m=2, family=2)
        assert ratio_relation8(f, p, 2, order=256) < 1e-9


class TestCoefficientResidual:
    def test_equals_absolute_for_small_coefficients(self):
        a = TruncatedSeries([0.5, -0.25, 0.1])
        b = TruncatedSeries([0.5, -0.25 + 1e-10, 0.1])
        assert coefficient_residual(a, b) == pytest.approx(1e-10)

    def test_relative_above_unit_magnitude(self):
        a = TruncatedSeries([1e8])
        b = TruncatedSeries([1e8 + 1.0])
        assert coefficient_residual(a, b) == pytest.approx(1e-8, rel=1e-6)

    def test_power_expansion_unit_coefficients(self):
        # (f^alpha)/z^alpha for the Koebe is (1-z)^{-2 alpha}
        f = koebe_lambda(0.0, 32)
        e = f_power_alpha(f, 1.5)
        expected = TruncatedSeries([1.0, -1.0]).truncated(31)
        from starlab import series_pow_real

        assert coefficient_residual(e.unit, series_pow_real(expected, -3.0)) < 1e-12
        assert e.head == 1.5
