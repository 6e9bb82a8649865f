"""Tests for circle-grid order estimation, membership margins,
subordination falsification, and the admissibility margin."""

import numpy as np
import pytest

from starlab import (
    DominantSpec,
    GridSpec,
    NormalizedFunction,
    TruncatedSeries,
    admissibility_margin,
    best_dominant_q,
    check_membership,
    estimate_order,
    koebe_lambda,
    subordination_falsify,
)
from starlab.errors import CurveSelfIntersection, OutsideRegime, TailTooLarge
from starlab.geometry import membership_ratio_evaluator

BIG_ORDER = 2048


def identity_function(order: int = 64) -> NormalizedFunction:
    c = np.zeros(order + 1, dtype=complex)
    c[1] = 1.0
    return NormalizedFunction(TruncatedSeries(c))


class TestGridSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(radii=(0.9, 0.5))
        with pytest.raises(ValueError):
            GridSpec(radii=(0.5, 1.0))
        with pytest.raises(ValueError):
            GridSpec(theta_count=8)

    def test_defaults(self):
        g = GridSpec()
        assert g.radii == (0.5, 0.9, 0.99)
        assert g.theta_count == 1024


class TestOrderEstimation:
    @pytest.mark.parametrize("lam", [0.0, 0.25, 0.5])
    def test_koebe_order_extrapolates_to_lambda(self, lam):
        f = koebe_lambda(lam, BIG_ORDER)
        est = estimate_order(membership_ratio_evaluator(f, 0), GridSpec())
        assert est.extrapolated == pytest.approx(lam, abs=1e-2)
        assert est.monotone

    def test_identity_function_margin_exact(self):
        f = identity_function()
        for lam in (0.0, 0.3):
            assert check_membership(f, 2, lam) == pytest.approx(1.0 - lam, abs=1e-12)

    def test_tail_guard(self):
        # order 64 is far too short for a reliable scan at r = 0.99
        f = koebe_lambda(0.0, 64)
        with pytest.raises(TailTooLarge):
            estimate_order(membership_ratio_evaluator(f, 0), GridSpec())

    def test_lambda_domain(self):
        with pytest.raises(ValueError):
            check_membership(identity_function(), 0, 1.0)

    def test_refinement_improves_minimum(self):
        f = koebe_lambda(0.0, BIG_ORDER)
        coarse = estimate_order(
            membership_ratio_evaluator(f, 0), GridSpec(theta_count=64)
        )
        fine = estimate_order(
            membership_ratio_evaluator(f, 0), GridSpec(theta_count=64, refine=True)
        )
        assert fine.per_radius_min[-1][1] <= coarse.per_radius_min[-1][1] + 1e-15


class TestSubordination:
    def test_composition_with_schwarz_map_is_consistent(self):
        spec = DominantSpec(0.0, 0.0)

        def q(z):
            return best_dominant_q(spec, z)

        def p(z):
            return best_dominant_q(spec, np.asarray(z) ** 2)

        verdict = subordination_falsify(p, q, GridSpec(radii=(0.5, 0.9)))
        assert verdict.consistent

    def test_inflated_copy_is_flagged(self):
        spec = DominantSpec(0.0, 0.0)

        def q(z):
            return best_dominant_q(spec, z)

        def p(z):
            return 1.0 + 1.05 * (q(z) - 1.0)

        verdict = subordination_falsify(p, q, GridSpec(radii=(0.9,)))
        assert not verdict.consistent
        assert verdict.witness is not None

    def test_mismatched_origin_is_flagged(self):
        def q(z):
            return 1.0 / (1.0 - np.asarray(z, dtype=complex))

        def p(z):
            return 0.5 + q(z)

        verdict = subordination_falsify(p, q)
        assert not verdict.consistent
        assert verdict.radius == 0.0

    def test_equality_on_boundary_tolerated(self):
        # p = q exactly: every sample sits on the curve
        def q(z):
            return 1.0 / (1.0 - np.asarray(z, dtype=complex))

        verdict = subordination_falsify(q, q, GridSpec(radii=(0.5,)))
        assert verdict.consistent

    def test_self_intersecting_curve_raises(self):
        def q(z):
            z = np.asarray(z, dtype=complex)
            return z**2 + 0.05 * z  # figure-eight-like image, not injective

        def p(z):
            return q(np.asarray(z) * 0.5)

        with pytest.raises(CurveSelfIntersection):
            subordination_falsify(p, q, GridSpec(radii=(0.9,)))


class TestAdmissibility:
    def test_margin_nonnegative_in_regime(self):
        u2 = np.linspace(-10.0, 10.0, 201)
        for mu in (0.0, 0.5, 1.0, 2.0 + 1.0j):
            for lambda0 in (0.0, 0.25):
                v1 = -0.5 * (1.0 - lambda0) * (1.0 + u2**2)
                m = admissibility_margin(mu, lambda0, u2, v1)
                assert np.all(m >= 0.0)

    def test_degenerate_case_is_zero(self):
        # Re mu + lambda0 = 0 gives exactly zero margin
        m = admissibility_margin(0.0, 0.0, 1.0, -2.0)
        assert m == 0.0

    def test_negative_witness_when_mu_negative(self):
        u2 = np.linspace(-3.0, 3.0, 31)
        v1 = -0.5 * (1.0 + u2**2)
        m = admissibility_margin(-1.0, 0.0, u2, v1)
        assert np.min(m) < 0.0

    def test_regime_guard(self):
        with pytest.raises(OutsideRegime):
            admissibility_margin(1.0, 0.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            admissibility_margin(1.0, -0.1, 0.0, -1.0)
