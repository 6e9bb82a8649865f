"""Exception hierarchy for the starlab numeric kernels."""


class StarlabError(Exception):
    """Base class for all starlab-specific failures."""


class ZeroConstantTerm(StarlabError):
    """Division by a series whose constant term (numerically) vanishes."""


class NotUnitLeading(StarlabError):
    """An operation requiring u(0) = 1 was given a series with u(0) != 1."""


class BranchPointAtZero(StarlabError):
    """Evaluation of z^rho at z = 0 with a non-integer negative head."""


class DivergentAtOrigin(StarlabError):
    """Termwise integration of an element not integrable at the origin."""


class LogarithmicTerm(StarlabError):
    """Termwise integration hit a total exponent of -1."""


class PoleInWeight(StarlabError):
    """An operator weight factor has a vanishing denominator."""


class QuadratureNonConvergence(StarlabError):
    """Adaptive quadrature failed to converge within the level budget."""


class ExtrapolationUnstable(StarlabError):
    """Boundary-limit extrapolation did not Cauchy-converge."""


class TailTooLarge(StarlabError):
    """Series tail bound too large for trustworthy evaluation at the radius."""


class CurveSelfIntersection(StarlabError):
    """A sampled image curve failed the injectivity monitor."""


class OutsideRegime(StarlabError):
    """Admissibility margin queried outside its precondition regime."""
