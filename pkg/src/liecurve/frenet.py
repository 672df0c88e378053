"""Frenet apparatus of arc-length curves in a Lie group and of algebra-valued curves.

In left-invariant components the Frenet equations read

    T' = kappa N
    N' = -kappa T + (tau - tau_G) B
    B' = -(tau - tau_G) N

with componentwise derivatives, so the frame is computed exactly like a
Euclidean Frenet frame of the body velocity, and the group torsion
``tau_G = <[T, N], B> / 2`` is added back to the effective torsion.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.interpolate import make_interp_spline

from . import fd
from .errors import GeodesicDegeneracy, InsufficientSamples, IrregularCurve
from .lie_core import UNIT_SPEED_TOL, GroupSpec, body_velocity, bracket, inner

KAPPA_MIN = 1e-6
SPEED_MIN = 1e-8
MIN_SAMPLES = 7


def _check_grid(s: np.ndarray) -> float:
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or len(s) < MIN_SAMPLES:
        raise InsufficientSamples(
            f"insufficient samples: need at least {MIN_SAMPLES}, got {len(s)}"
        )
    steps = np.diff(s)
    h = float(steps.mean())
    if h <= 0 or np.max(np.abs(steps - h)) > 1e-9 * max(h, 1e-300) + 1e-12 * np.max(np.abs(s)):
        raise ValueError("grid must be uniform and increasing")
    return h


def is_uniform(s, rtol: float = 1e-9) -> bool:
    steps = np.diff(np.asarray(s, dtype=float))
    return bool(steps.min() > 0 and np.ptp(steps) <= rtol * steps.mean() + 1e-12 * np.abs(s).max())


@dataclass(frozen=True)
class SampledCurve:
    """Group-valued samples on a uniform arc-length grid."""

    group: GroupSpec
    s: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (len(s),) + self.group.point_shape:
            raise ValueError(
                f"points shape {pts.shape} does not match {len(s)} samples in {self.group.name}"
            )
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "points", pts)

    @property
    def h(self) -> float:
        return float((self.s[-1] - self.s[0]) / (len(self.s) - 1))

    def __len__(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class AlgebraCurve:
    """Algebra-valued curve, e.g. a spherical indicatrix.

    ``source_s`` optionally records, per sample, the parameter of the curve it
    was derived from (kept through reparametrization).
    """

    group: GroupSpec
    s: np.ndarray
    points: np.ndarray
    source_s: np.ndarray | None = None

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (len(s), 3):
            raise ValueError(f"points must have shape ({len(s)}, 3), got {pts.shape}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "points", pts)
        if self.source_s is not None:
            object.__setattr__(self, "source_s", np.asarray(self.source_s, dtype=float))

    def __len__(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class FrenetData:
    """Per-sample Frenet frame and curvature profiles.

    ``tau`` is the group torsion-corrected torsion; ``tau_eff = tau - tau_G``
    is what appears in the componentwise Frenet equations.
    """

    group: GroupSpec
    s: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    tau_G: np.ndarray
    order: int = 4
    handedness: int = 1
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def h(self) -> float:
        return float((self.s[-1] - self.s[0]) / (len(self.s) - 1))

    @property
    def tau_eff(self) -> np.ndarray:
        return self.tau - self.tau_G

    def __len__(self) -> int:
        return len(self.s)

    def window(self, lo: int, hi: int) -> "FrenetData":
        """Samples ``lo:hi`` as a new FrenetData."""
        sl = slice(lo, hi)
        return replace(
            self,
            s=self.s[sl], T=self.T[sl], N=self.N[sl], B=self.B[sl],
            kappa=self.kappa[sl], tau=self.tau[sl], tau_G=self.tau_G[sl],
        )


def interior_slice(n: int, fraction: float = 0.9) -> slice:
    """Central ``fraction`` of ``n`` samples."""
    cut = int(round(n * (1.0 - fraction) / 2.0))
    return slice(cut, n - cut)


def group_torsion(group: GroupSpec, T, N, B) -> np.ndarray:
    """``tau_G = <[T, N], B> / 2`` per sample."""
    return 0.5 * inner(bracket(group, T, N), B)


def frame_from_tangent(
    group: GroupSpec,
    s: np.ndarray,
    T: np.ndarray,
    order: int = 4,
    rate: np.ndarray | None = None,
    kappa_min: float = KAPPA_MIN,
    strict: bool = True,
) -> FrenetData:
    """Frenet apparatus from a sampled unit-tangent field.

    Parameters
    ----------
    s : array
        Uniform grid on which ``T`` is sampled. It need not be the arc length
        of the curve: ``rate`` gives ``ds*/ds`` (arc length per grid unit),
        and derivatives are divided by it.
    strict : bool
        If True raise :class:`GeodesicDegeneracy` when ``kappa < kappa_min``
        at an interior sample; otherwise the frame is NaN there.
    """
    h = _check_grid(s)
    T = np.asarray(T, dtype=float)
    T = T / np.linalg.norm(T, axis=1, keepdims=True)
    rate = np.ones(len(s)) if rate is None else np.asarray(rate, dtype=float)
    Tdot = fd.derivative(T, h, order) / rate[:, None]
    kappa = np.linalg.norm(Tdot, axis=1)
    degenerate = kappa < kappa_min
    if np.any(degenerate[1:-1]) and strict:
        raise GeodesicDegeneracy(
            float(kappa[1:-1].min()), kappa_min, everywhere=bool(np.all(degenerate[1:-1]))
        )
    with np.errstate(invalid="ignore", divide="ignore"):
        # Gram-Schmidt keeps the frame orthonormal to rounding
        N = Tdot - inner(Tdot, T)[:, None] * T
        N = N / np.linalg.norm(N, axis=1, keepdims=True)
    N[degenerate] = np.nan
    B = np.cross(T, N)
    if np.any(degenerate):
        tau_eff = np.full(len(s), np.nan)
    else:
        Ndot = fd.derivative(N, h, order) / rate[:, None]
        tau_eff = inner(Ndot, B)
    tau_G = group_torsion(group, T, N, B)
    return FrenetData(
        group=group, s=np.asarray(s, dtype=float), T=T, N=N, B=B,
        kappa=kappa, tau=tau_eff + tau_G, tau_G=tau_G, order=order,
    )


def frenet_apparatus(
    curve: SampledCurve,
    order: int = 4,
    kappa_min: float = KAPPA_MIN,
    unit_speed_tol: float | None = UNIT_SPEED_TOL,
    strict: bool = True,
) -> FrenetData:
    """Frenet apparatus ``(T, N, B, kappa, tau, tau_G)`` of an arc-length curve in G.

    Raises
    ------
    NonUnitSpeed
        From :func:`~liecurve.lie_core.body_velocity`.
    GeodesicDegeneracy
        If ``kappa < kappa_min`` at an interior sample (``strict`` only).
    """
    h = _check_grid(curve.s)
    T = body_velocity(curve.group, curve.points, h, order, unit_speed_tol)
    return frame_from_tangent(curve.group, curve.s, T, order, kappa_min=kappa_min, strict=strict)


def speed_spline(curve: AlgebraCurve, k: int = 5):
    """Interpolating spline of the curve and its speed ``|d point / d s|`` at the nodes."""
    spl = make_interp_spline(curve.s, curve.points, k=k)
    speed = np.linalg.norm(spl.derivative()(curve.s), axis=1)
    return spl, speed


def reparametrize_to_arclength(
    curve: AlgebraCurve,
    step: float | None = None,
    k: int = 5,
    speed_min: float = SPEED_MIN,
) -> AlgebraCurve:
    """Resample ``curve`` on a uniform arc-length grid starting at ``curve.s[0]``.

    Arc length is the antiderivative of a spline fitted to the speed; the
    inverse map is polished with Newton steps. The returned ``source_s`` holds
    the original parameter of every new sample.

    Parameters
    ----------
    step : float, optional
        Spacing of the new grid. Defaults to the mean spacing that keeps the
        number of samples unchanged.
    k : int
        Spline degree (5 keeps interpolation error far below FD truncation).
    """
    u = curve.s
    if len(u) < MIN_SAMPLES:
        raise InsufficientSamples(f"insufficient samples: need at least {MIN_SAMPLES}")
    spl, speed = speed_spline(curve, k)
    if speed.min() < speed_min:
        raise IrregularCurve(f"speed {speed.min():.3e} below {speed_min:.1e}")
    dspl = spl.derivative()
    arc = make_interp_spline(u, speed, k=k).antiderivative()
    L_nodes = arc(u) - arc(u[0])
    total = float(L_nodes[-1])
    if step is None:
        m = len(u)
    else:
        m = max(int(round(total / step)) + 1, MIN_SAMPLES)
    L_new = np.linspace(0.0, total, m)
    inv = make_interp_spline(L_nodes, u, k=k)
    u_new = inv(L_new)
    for _ in range(3):
        resid = arc(u_new) - arc(u[0]) - L_new
        u_new = u_new - resid / np.linalg.norm(dspl(u_new), axis=1)
    u_new = np.clip(u_new, u[0], u[-1])
    u_new[0], u_new[-1] = u[0], u[-1]
    source = u_new if curve.source_s is None else np.interp(u_new, u, curve.source_s)
    return AlgebraCurve(curve.group, u[0] + L_new, spl(u_new), source_s=source)


def frenet_of_algebra_curve(
    curve: AlgebraCurve,
    order: int = 4,
    step: float | None = None,
    kappa_min: float = KAPPA_MIN,
    speed_min: float = SPEED_MIN,
) -> FrenetData:
    """Frenet apparatus of an algebra-valued curve, torsion corrected by its group's ``tau_G``.

    The curve is first resampled to a uniform arc-length grid (see
    :func:`reparametrize_to_arclength`), then differentiated componentwise.
    ``meta`` carries the resampled curve and the measured rate
    ``ds*/du`` at the input nodes.
    """
    _, speed = speed_spline(curve)
    if speed.min() < speed_min:
        raise IrregularCurve(f"speed {speed.min():.3e} below {speed_min:.1e}")
    rep = reparametrize_to_arclength(curve, step=step, speed_min=speed_min)
    h = _check_grid(rep.s)
    T = fd.derivative(rep.points, h, order)
    fdata = frame_from_tangent(curve.group, rep.s, T, order, kappa_min=kappa_min)
    fdata.meta.update(curve=rep, input_speed=speed)
    return fdata
