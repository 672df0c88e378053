"""Exception hierarchy for liecurve."""

from __future__ import annotations


class LieCurveError(Exception):
    """Base class for all library errors."""


class NonUnitSpeed(LieCurveError):
    """The sampled curve is not parametrized by arc length."""

    def __init__(self, max_deviation: float, tol: float):
        self.max_deviation = max_deviation
        self.tol = tol
        super().__init__(
            f"curve is not unit speed: max | |T| - 1 | = {max_deviation:.3e} > {tol:.1e}"
        )


class GeodesicDegeneracy(LieCurveError):
    """Curvature fell below the threshold where the principal normal is defined.

    ``everywhere`` is True when the whole curve is degenerate, i.e. a geodesic.
    """

    def __init__(self, min_kappa: float, kappa_min: float, everywhere: bool = False):
        self.min_kappa = min_kappa
        self.kappa_min = kappa_min
        self.everywhere = everywhere
        where = "everywhere" if everywhere else "at some samples"
        super().__init__(
            f"curvature below {kappa_min:.1e} {where} (min kappa = {min_kappa:.3e})"
        )


class IrregularCurve(LieCurveError):
    """Speed of an algebra-valued curve is too close to zero."""


class InsufficientSamples(LieCurveError):
    """Too few samples for the finite-difference stencils."""


class ConstantH(LieCurveError):
    """H' vanishes on the whole window, so sigma_N is undefined (general helix)."""


class NotSlantHelix(LieCurveError):
    """The curve's sigma_N is not constant within tolerance."""


class VanishingH(LieCurveError):
    """H vanishes on the requested window; the binormal indicatrix degenerates."""


class CuspInRange(LieCurveError):
    """The involute offset constant lies inside (or too close to) the arc-length range."""


class DomainExceedsSingularity(LieCurveError):
    """The slant-helix profile domain reaches its closed-form singularity."""


class CurveFileError(LieCurveError):
    """Malformed curve file."""
