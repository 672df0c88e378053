"""Frenet apparatus, slant-helix invariants and derived curves in 3-D Lie groups
with bi-invariant metrics (the abelian group, SO(3) and SU(2))."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConstantH,
    CurveFileError,
    CuspInRange,
    DomainExceedsSingularity,
    GeodesicDegeneracy,
    InsufficientSamples,
    IrregularCurve,
    LieCurveError,
    NonUnitSpeed,
    NotSlantHelix,
    VanishingH,
)
from .frenet import FrenetData, SampledCurve, frenet_apparatus  # noqa: E402
from .invariants import Classification, ConstancyTolerances, classify  # noqa: E402
from .lie_core import ABELIAN, SO3, SU2, GroupSpec, group_spec  # noqa: E402
from .synthesis import Profile, integrate_frenet  # noqa: E402

__all__ = [
    "ABELIAN", "SO3", "SU2", "GroupSpec", "group_spec",
    "SampledCurve", "FrenetData", "frenet_apparatus",
    "Classification", "ConstancyTolerances", "classify",
    "Profile", "integrate_frenet",
    "LieCurveError", "NonUnitSpeed", "GeodesicDegeneracy", "IrregularCurve",
    "InsufficientSamples", "ConstantH", "NotSlantHelix", "VanishingH",
    "CuspInRange", "DomainExceedsSingularity", "CurveFileError",
]
