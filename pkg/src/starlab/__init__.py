"""starlab: a desk-scale numerical laboratory for n-starlike integral
operators on the unit disk."""

from .series_core import (
    AnalyticElement,
    NormalizedFunction,
    TruncatedSeries,
    element_eval,
    integrate_termwise,
    normalized_from_unit,
    series_add,
    series_div,
    series_exp,
    series_log,
    series_mul,
    series_pow_real,
)
from .salagean import (
    SalageanRatio,
    salagean_apply,
    salagean_apply_normalized,
    salagean_inverse,
    salagean_ratio,
)
from .integral_ops import (
    MuXi,
    OperatorParams,
    apply_J_eq2,
    apply_J_eq2_beta,
    apply_Jm,
    apply_Jm_beta,
    check_recurrence7,
    coefficient_residual,
    f_power_alpha,
    mu_xi,
    quadrature_oracle,
    ratio_relation8,
    weight_factor,
)
from .dominants import (
    DominantCurve,
    DominantSpec,
    best_dominant_q,
    dominant_curve,
    halfplane_h,
    lemma2_pipeline,
    lemma2_q_series,
    rho_limit,
    verify_ode4,
)
from .geometry import (
    GridSpec,
    OrderEstimate,
    SubordinationVerdict,
    admissibility_margin,
    check_membership,
    estimate_order,
    subordination_falsify,
)
from .genfun import (
    HerglotzAtoms,
    koebe_lambda,
    p_from_atoms,
    random_atoms,
    sn_member,
    starlike_from_p,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
