"""Harmonic curvature, the slant-helix invariant sigma_N, axes and classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import fd
from .errors import ConstantH, GeodesicDegeneracy, NotSlantHelix
from .frenet import KAPPA_MIN, FrenetData, interior_slice
from .lie_core import GroupKind, GroupSpec

HPRIME_MIN = 1e-6

# Group torsion per group as tabulated for the closed forms below. Kept
# separate from GroupSpec.tau_G so the two routes stay independent.
_SPECIAL_TAU_G = {GroupKind.ABELIAN: 0.0, GroupKind.SU2: 1.0, GroupKind.SO3: 0.5}


class Classification(str, enum.Enum):
    GEODESIC = "Geodesic"
    CIRCULAR_HELIX = "CircularHelix"
    GENERAL_HELIX = "GeneralHelix"
    SLANT_HELIX = "SlantHelix"
    GENERIC = "Generic"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ConstancyTolerances:
    """Thresholds for calling a profile constant.

    A profile is constant when its standard deviation over the interior
    window is at most ``rel_std * |mean|`` or at most ``abs_std``. The
    absolute floor covers profiles near zero (``H`` of a curve with
    ``tau = tau_G``), whose roundoff at h = 1e-3 is about 1e-7.
    """

    rel_std: float = 1e-3
    abs_std: float = 1e-5
    interior: float = 0.9
    kappa_min: float = KAPPA_MIN
    hprime_min: float = HPRIME_MIN
    min_unmasked: float = 0.5


@dataclass(frozen=True)
class Constancy:
    mean: float
    std: float
    rel_std: float
    n: int

    def is_constant(self, tol: ConstancyTolerances) -> bool:
        if self.n == 0:
            return False
        return self.std <= tol.rel_std * abs(self.mean) or self.std <= tol.abs_std

    def as_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std, "rel_std": self.rel_std, "n": self.n}


def constancy(values, mask=None) -> Constancy:
    """Mean and relative standard deviation of the finite, unmasked values."""
    v = np.asarray(values, dtype=float)
    ok = np.isfinite(v) if mask is None else (np.asarray(mask, bool) & np.isfinite(v))
    v = v[ok]
    if v.size == 0:
        return Constancy(float("nan"), float("nan"), float("nan"), 0)
    mean = float(v.mean())
    std = float(v.std())
    rel = std / abs(mean) if mean != 0 else (0.0 if std == 0 else float("inf"))
    return Constancy(mean, std, rel, int(v.size))


def harmonic_curvature(fd_: FrenetData, kappa_min: float = KAPPA_MIN) -> tuple[np.ndarray, np.ndarray]:
    """``H = (tau - tau_G) / kappa`` and its derivative ``H'``."""
    if np.any(~(fd_.kappa > kappa_min)):
        raise GeodesicDegeneracy(float(np.nanmin(fd_.kappa)), kappa_min,
                                 everywhere=bool(np.all(fd_.kappa <= kappa_min)))
    H = (fd_.tau - fd_.tau_G) / fd_.kappa
    return H, fd.derivative(H, fd_.h, fd_.order)


def sigma_N(
    fd_: FrenetData,
    H: np.ndarray,
    Hprime: np.ndarray,
    hprime_min: float = HPRIME_MIN,
) -> tuple[np.ndarray, np.ndarray]:
    """``sigma_N = kappa (1 + H^2)^(3/2) / H'``.

    Returns ``(sigma, valid)``; samples with ``|H'| <= hprime_min`` are NaN
    and flagged invalid.

    Raises
    ------
    ConstantH
        If ``H'`` vanishes everywhere (the curve is a general helix).
    """
    valid = np.abs(Hprime) > hprime_min
    if not np.any(valid):
        raise ConstantH("H' vanishes on the whole window; sigma_N undefined")
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma = fd_.kappa * (1.0 + H * H) ** 1.5 / Hprime
    return np.where(valid, sigma, np.nan), valid


def special_sigma(
    group: GroupSpec,
    kappa: np.ndarray,
    tau: np.ndarray,
    h: float,
    order: int = 4,
    hprime_min: float = HPRIME_MIN,
) -> np.ndarray:
    """Group-specific closed form of sigma_N from ``kappa`` and ``tau`` alone.

        sigma_N = (kappa^2 + (tau - t)^2)^(3/2) / (kappa^2 ((tau - t)/kappa)')

    with ``t`` = 0, 1, 1/2 for the abelian group, SU(2) and SO(3).
    """
    t = _SPECIAL_TAU_G[group.kind]
    kappa = np.asarray(kappa, dtype=float)
    te = np.asarray(tau, dtype=float) - t
    ratio_rate = fd.derivative(te / kappa, h, order)
    valid = np.abs(ratio_rate) > hprime_min
    if not np.any(valid):
        raise ConstantH("(tau - tau_G)/kappa is constant; sigma_N undefined")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (kappa**2 + te**2) ** 1.5 / (kappa**2 * ratio_rate)
    return np.where(valid, out, np.nan)


@dataclass(frozen=True)
class AxisEstimate:
    """Per-sample axis ``X(s)`` of a slant helix and how constant it is."""

    samples: np.ndarray
    mean: np.ndarray
    max_deviation: float
    normal_cosine: np.ndarray
    cos_theta: float

    @property
    def max_cosine_error(self) -> float:
        return float(np.nanmax(np.abs(self.normal_cosine - self.cos_theta)))


def axis_profile(fd_: FrenetData, H: np.ndarray, Hprime: np.ndarray, sigma: float) -> np.ndarray:
    """``X = (kappa H (1+H^2)/H' T + N + kappa (1+H^2)/H' B) cos(theta)``, ``tan(theta) = sigma``."""
    cos_theta = 1.0 / np.sqrt(1.0 + sigma * sigma)
    a = fd_.kappa * (1.0 + H * H) / Hprime
    return (a[:, None] * H[:, None] * fd_.T + fd_.N + a[:, None] * fd_.B) * cos_theta


def axis(
    fd_: FrenetData,
    H: np.ndarray | None = None,
    Hprime: np.ndarray | None = None,
    sigma: float | None = None,
    tol: ConstancyTolerances = ConstancyTolerances(),
) -> AxisEstimate:
    """Axis of a slant helix, with its constancy and ``<N, X>`` profile.

    Only the interior window enters the statistics.

    Raises
    ------
    NotSlantHelix
        If sigma_N is not constant within ``tol``.
    """
    if H is None or Hprime is None:
        H, Hprime = harmonic_curvature(fd_, tol.kappa_min)
    sl = interior_slice(len(fd_), tol.interior)
    try:
        sig, valid = sigma_N(fd_, H, Hprime, tol.hprime_min)
    except ConstantH as exc:
        raise NotSlantHelix(str(exc)) from None
    stats = constancy(sig[sl], valid[sl])
    if (valid[sl].mean() < tol.min_unmasked) or not stats.is_constant(tol):
        raise NotSlantHelix(
            f"sigma_N not constant: rel_std = {stats.rel_std:.3e} > {tol.rel_std:.1e}"
        )
    if sigma is None:
        sigma = stats.mean
    X = axis_profile(fd_, H, Hprime, sigma)
    Xi = X[sl][valid[sl]]
    mean = Xi.mean(axis=0)
    mean = mean / np.linalg.norm(mean)
    dev = float(np.max(np.abs(Xi - mean)))
    ncos = np.einsum("ij,j->i", fd_.N, mean)
    ncos_out = np.full(len(fd_), np.nan)
    ncos_out[sl] = ncos[sl]
    return AxisEstimate(X, mean, dev, ncos_out, 1.0 / np.sqrt(1.0 + sigma * sigma))


@dataclass
class InvariantReport:
    """Result of :func:`classify`."""

    classification: Classification
    H: np.ndarray
    Hprime: np.ndarray
    sigma_N: np.ndarray
    sigma_valid: np.ndarray
    constancy: dict[str, Constancy]
    tolerances: ConstancyTolerances
    slope: float | None = None
    theta: float | None = None
    axis: np.ndarray | None = None
    axis_estimate: AxisEstimate | None = None
    lancret_fit: dict | None = None
    notes: list[str] = field(default_factory=list)

    #: documented precedence of the tags
    PRECEDENCE = (
        Classification.GEODESIC,
        Classification.CIRCULAR_HELIX,
        Classification.GENERAL_HELIX,
        Classification.SLANT_HELIX,
        Classification.GENERIC,
    )


def lancret_fit(fd_: FrenetData, interior: float = 0.9) -> dict:
    """Least-squares fit of ``tau - tau_G = c kappa`` over the interior window.

    Returns the slope and the RMS residual; a small residual means the
    curve is a general helix with slope ``c``.
    """
    sl = interior_slice(len(fd_), interior)
    k = fd_.kappa[sl]
    te = fd_.tau_eff[sl]
    c = float(np.dot(k, te) / np.dot(k, k))
    resid = float(np.sqrt(np.mean((te - c * k) ** 2)))
    return {"slope": c, "residual": resid}


def classify(fd_: FrenetData, tol: ConstancyTolerances = ConstancyTolerances()) -> InvariantReport:
    """Classify a curve from its Frenet data.

    Tags are tested in order Geodesic, CircularHelix, GeneralHelix,
    SlantHelix, Generic; the first that applies wins. A circular helix is
    also a general helix, so its slope is reported too.
    """
    n = len(fd_)
    sl = interior_slice(n, tol.interior)
    nan = np.full(n, np.nan)
    kappa = fd_.kappa
    if np.all(~(kappa[sl] > tol.kappa_min)):
        return InvariantReport(
            Classification.GEODESIC, nan, nan, nan, np.zeros(n, bool),
            {"kappa": constancy(kappa[sl])}, tol,
        )
    H, Hp = harmonic_curvature(fd_, tol.kappa_min)
    stats = {
        "kappa": constancy(kappa[sl]),
        "tau": constancy(fd_.tau[sl]),
        "tau_G": constancy(fd_.tau_G[sl]),
        "H": constancy(H[sl]),
    }
    try:
        sig, valid = sigma_N(fd_, H, Hp, tol.hprime_min)
    except ConstantH:
        sig, valid = nan.copy(), np.zeros(n, bool)
    stats["sigma_N"] = constancy(sig[sl], valid[sl])
    report = InvariantReport(
        Classification.GENERIC, H, Hp, sig, valid, stats, tol, lancret_fit=lancret_fit(fd_, tol.interior)
    )
    if stats["H"].is_constant(tol):
        report.slope = stats["H"].mean
        if stats["kappa"].is_constant(tol) and stats["tau"].is_constant(tol):
            report.classification = Classification.CIRCULAR_HELIX
        else:
            report.classification = Classification.GENERAL_HELIX
        return report
    unmasked = float(valid[sl].mean())
    if unmasked >= tol.min_unmasked and stats["sigma_N"].is_constant(tol):
        est = axis(fd_, H, Hp, stats["sigma_N"].mean, tol)
        report.classification = Classification.SLANT_HELIX
        report.theta = float(np.arctan(stats["sigma_N"].mean))
        report.axis = est.mean
        report.axis_estimate = est
    elif unmasked < tol.min_unmasked:
        report.notes.append(f"sigma_N masked on {1 - unmasked:.0%} of the window")
    return report
