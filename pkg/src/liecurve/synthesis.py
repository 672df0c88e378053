"""Exact test curves from prescribed curvature and torsion.

The frame ``(T, N, B)`` is integrated with classical RK4 in left-invariant
components; the group point follows ``p' = p T`` and is advanced with a
fourth-order Magnus step built from the frame at the two Gauss-Legendre
nodes of each interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import make_interp_spline

from .errors import DomainExceedsSingularity
from .frenet import FrenetData, SampledCurve, group_torsion
from .lie_core import GroupSpec, advance, bracket, check_element, cross, identity

ProfileFn = Callable[[np.ndarray], np.ndarray]

#: coarse steps are allowed so truncation error can be observed above roundoff
MAX_STEP = 0.25

_GAUSS = (0.5 - np.sqrt(3.0) / 6.0, 0.5 + np.sqrt(3.0) / 6.0)


def _const(value: float) -> ProfileFn:
    return lambda s: np.full(np.shape(s), float(value))


@dataclass(frozen=True)
class Profile:
    """Prescribed ``kappa(s)`` and ``tau(s)`` on ``[s0, s1]`` with step ``h``.

    ``tau`` is the full torsion, i.e. it includes the group torsion.
    """

    kappa: ProfileFn
    tau: ProfileFn
    s0: float
    s1: float
    h: float
    label: str = "custom"

    @property
    def grid(self) -> np.ndarray:
        n = int(round((self.s1 - self.s0) / self.h))
        return self.s0 + self.h * np.arange(n + 1)

    @classmethod
    def from_samples(cls, s, kappa, tau, h: float | None = None, label: str = "tabulated"):
        """Profile interpolating tabulated curvature and torsion (quintic splines)."""
        s = np.asarray(s, dtype=float)
        ks = make_interp_spline(s, np.asarray(kappa, dtype=float), k=5)
        ts = make_interp_spline(s, np.asarray(tau, dtype=float), k=5)
        h = float(s[1] - s[0]) if h is None else h
        return cls(ks, ts, float(s[0]), float(s[-1]), h, label)


def default_frame() -> np.ndarray:
    """Rows T, N, B = X1, X2, X3."""
    return np.eye(3)


def _gram_schmidt(F: np.ndarray) -> np.ndarray:
    T = F[0] / np.sqrt(F[0] @ F[0])
    N = F[1] - (F[1] @ T) * T
    N /= np.sqrt(N @ N)
    return np.array([T, N, cross(T, N)])


def integrate_frenet(
    g: GroupSpec,
    profile: Profile,
    g0: np.ndarray | None = None,
    frame0: np.ndarray | None = None,
) -> tuple[SampledCurve, FrenetData]:
    """Integrate the left-invariant Frenet equations for ``profile``.

    Returns the sampled curve and the frame data used to build it (the
    integrated frame with the prescribed ``kappa``/``tau``).
    """
    if not 0 < profile.h <= MAX_STEP:
        raise ValueError(f"step {profile.h} outside (0, {MAX_STEP}]")
    p = identity(g) if g0 is None else np.asarray(g0, dtype=float)
    if not check_element(g, p):
        raise ValueError("initial point is not a valid group element")
    F = default_frame() if frame0 is None else np.asarray(frame0, dtype=float)
    if np.abs(F @ F.T - np.eye(3)).max() > 1e-9 or np.linalg.det(F) < 0:
        raise ValueError("initial frame must be orthonormal and right-handed")
    tG = g.tau_G
    kap, tau = profile.kappa, profile.tau
    s = profile.grid
    h = profile.h
    n = len(s)

    # generator A(s) of F' = A F at every RK4 abscissa, evaluated once
    fracs = sorted({0.0, 1.0, 0.5, *(_GAUSS), *(x / 2 for x in _GAUSS)})
    gen = {}
    for f in fracs:
        k = np.asarray(kap(s + f * h), dtype=float) * np.ones(n)
        te = np.asarray(tau(s + f * h), dtype=float) * np.ones(n) - tG
        A = np.zeros((n, 3, 3))
        A[:, 0, 1], A[:, 1, 0] = k, -k
        A[:, 1, 2], A[:, 2, 1] = te, -te
        gen[f] = A

    def rk4(i: int, F: np.ndarray, a: float) -> np.ndarray:
        step = a * h
        A0, Am, A1 = gen[0.0][i], gen[a / 2][i], gen[a][i]
        k1 = A0 @ F
        k2 = Am @ (F + step / 2 * k1)
        k3 = Am @ (F + step / 2 * k2)
        k4 = A1 @ (F + step * k3)
        return F + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    frames = np.empty((n, 3, 3))
    points = np.empty((n,) + g.point_shape)
    frames[0], points[0] = F, p
    for i in range(n - 1):
        Fi = frames[i]
        T1 = rk4(i, Fi, _GAUSS[0])[0]
        T2 = rk4(i, Fi, _GAUSS[1])[0]
        omega = 0.5 * (T1 + T2) + (np.sqrt(3.0) / 12.0) * h * bracket(g, T1, T2)
        points[i + 1] = advance(g, points[i], omega, h)
        frames[i + 1] = _gram_schmidt(rk4(i, Fi, 1.0))
    T, N, B = frames[:, 0], frames[:, 1], frames[:, 2]
    curve = SampledCurve(g, s, points)
    data = FrenetData(
        group=g, s=s, T=T, N=N, B=B,
        kappa=np.asarray(kap(s), dtype=float) * np.ones(n),
        tau=np.asarray(tau(s), dtype=float) * np.ones(n),
        tau_G=group_torsion(g, T, N, B),
        meta={"source": "synthesis", "profile": profile.label},
    )
    return curve, data


# --------------------------------------------------------------------------
# profile families


def geodesic_profile(g: GroupSpec, s0: float, s1: float, h: float) -> Profile:
    return Profile(_const(0.0), _const(g.tau_G), s0, s1, h, "geodesic")


def circular_profile(g: GroupSpec, kappa: float, tau: float, s0: float, s1: float, h: float) -> Profile:
    """Constant curvature and torsion."""
    return Profile(_const(kappa), _const(tau), s0, s1, h, "circular")


def general_helix_profile(
    g: GroupSpec, c: float, kappa: ProfileFn | float, s0: float, s1: float, h: float
) -> Profile:
    """``tau = c kappa + tau_G``: a general helix with slope ``c``."""
    kfn = _const(kappa) if np.isscalar(kappa) else kappa
    if np.any(np.asarray(kfn(np.linspace(s0, s1, 101))) <= 0):
        raise ValueError("kappa must be positive")
    tG = g.tau_G
    return Profile(kfn, lambda s: c * np.asarray(kfn(s)) + tG, s0, s1, h, "general")


def slant_helix_H(s, m: float, kappa0: float) -> np.ndarray:
    """``H(s) = u / sqrt(1 - u^2)`` with ``u = kappa0 s / m``."""
    u = kappa0 * np.asarray(s, dtype=float) / m
    return u / np.sqrt(1.0 - u * u)


def slant_helix_profile(
    g: GroupSpec, m: float, kappa0: float, s0: float, s1: float, h: float
) -> Profile:
    """Constant curvature ``kappa0`` with ``sigma_N == m``.

    ``H / sqrt(1 + H^2) = kappa0 s / m`` solves ``H' = kappa0 (1 + H^2)^(3/2) / m``
    with ``H(0) = 0``; the closed form is singular at ``|s| = |m| / kappa0``,
    and the domain must stay 5% inside it.
    """
    if kappa0 <= 0:
        raise ValueError("kappa0 must be positive")
    if m == 0:
        raise ValueError("m must be nonzero")
    limit = 0.95 * abs(m) / kappa0
    if max(abs(s0), abs(s1)) > limit:
        raise DomainExceedsSingularity(
            f"domain [{s0}, {s1}] exceeds |s| <= {limit:g} (95% of |m|/kappa0)"
        )
    tG = g.tau_G
    return Profile(
        _const(kappa0),
        lambda s: tG + kappa0 * slant_helix_H(s, m, kappa0),
        s0, s1, h, "slant",
    )
