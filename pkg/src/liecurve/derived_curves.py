"""Tangent, normal and binormal indicatrices and involutes of a curve.

Each construction returns the measured Frenet data of the derived curve
alongside the closed-form predictions evaluated from the original curve's
``kappa``, ``H`` and ``H'``; ``deltas`` compares the two on the interior
window.

Closed forms used (``w = sqrt(1 + H^2)``, effective torsion = tau - tau_G):

==========  ===========  =================  ===================================
curve       ds*/ds       curvature          effective torsion
==========  ===========  =================  ===================================
tangent     kappa        w                  H' / (kappa w^2)
normal      kappa w      w_sigma/|sigma|    0 when sigma_N is constant
binormal    |kappa H|    w / |H|            -H' / (kappa H w^2)
involute    |c-s| kappa  w / |c - s|        H' / ((c - s) kappa w^2)
==========  ===========  =================  ===================================
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import make_interp_spline

from . import fd
from .errors import CuspInRange, GeodesicDegeneracy, VanishingH
from .frenet import (
    KAPPA_MIN,
    AlgebraCurve,
    FrenetData,
    SampledCurve,
    frame_from_tangent,
    frenet_of_algebra_curve,
    interior_slice,
)
from .invariants import harmonic_curvature
from .lie_core import GroupKind, hat, qmul

# Derived-grid spacing per kind, in input steps of arc length (None keeps the
# sample count). N and B carry roundoff from two derivatives of the input and
# are differentiated three more times, so their grids are coarser.
COARSEN = {"tangent": None, "normal": 10, "binormal": 2}
INVOLUTE_STRIDE = 10
H_VANISH = 1e-6


@dataclass
class DerivedCurveResult:
    """A derived curve, its measured apparatus and the predicted one.

    ``predicted`` holds profiles on the measured curve's grid; ``deltas``
    the max absolute deviations on the interior window.
    ``frame_tangent`` is the tangent of the derived curve expressed on the
    original grid by construction (N, -eps N, ...), used for orthogonality.
    """

    kind: str
    curve: AlgebraCurve | None
    fd: FrenetData
    predicted: dict[str, np.ndarray]
    deltas: dict[str, float]
    rate_measured: np.ndarray | None = None
    rate_predicted: np.ndarray | None = None
    frame_tangent: np.ndarray | None = None
    orthogonality: float | None = None
    extras: dict = field(default_factory=dict)

    @property
    def harmonic_ratio(self) -> np.ndarray:
        """``(tau - tau_G) / kappa`` of the derived curve."""
        return self.fd.tau_eff / self.fd.kappa


def _check_kappa(fd_a: FrenetData, kappa_min: float = KAPPA_MIN):
    if np.any(~(fd_a.kappa > kappa_min)):
        raise GeodesicDegeneracy(float(np.nanmin(fd_a.kappa)), kappa_min,
                                 everywhere=bool(np.all(fd_a.kappa <= kappa_min)))


def _on_grid(s: np.ndarray, values: np.ndarray, at: np.ndarray) -> np.ndarray:
    return make_interp_spline(s, values, k=5)(at)


def _compare(measured: FrenetData, source_s: np.ndarray, s: np.ndarray,
             predicted_src: dict[str, np.ndarray], interior: float) -> tuple[dict, dict]:
    predicted = {k: _on_grid(s, v, source_s) for k, v in predicted_src.items()}
    sl = interior_slice(len(measured), interior)
    deltas = {}
    meas = {"kappa": measured.kappa, "tau": measured.tau, "tau_G": measured.tau_G}
    for key, val in predicted.items():
        if key in meas and np.all(np.isfinite(val[sl])):
            deltas[key] = float(np.max(np.abs(meas[key][sl] - val[sl])))
    return predicted, deltas


def _indicatrix(kind, fd_a, points, rate_pred, pred, coarsen, order, interior, lo=0, hi=None):
    hi = len(fd_a) if hi is None else hi
    s = fd_a.s[lo:hi]
    curve = AlgebraCurve(fd_a.group, s, points[lo:hi])
    step = None
    if coarsen:
        # arc length per sample of the derived curve, scaled up
        step = coarsen * fd_a.h * float(np.mean(rate_pred[lo:hi]))
    meas = frenet_of_algebra_curve(curve, order=order, step=step)
    rep = meas.meta["curve"]
    pred = {k: v[lo:hi] for k, v in pred.items()}
    predicted, deltas = _compare(meas, rep.source_s, s, pred, interior)
    rate_meas = meas.meta["input_speed"]
    sl = interior_slice(len(s), interior)
    deltas["rate"] = float(np.max(np.abs(rate_meas[sl] - rate_pred[lo:hi][sl])))
    return DerivedCurveResult(kind, rep, meas, predicted, deltas,
                              rate_measured=rate_meas, rate_predicted=rate_pred[lo:hi])


def tangent_indicatrix(fd_a: FrenetData, coarsen: int | None = COARSEN["tangent"],
                       order: int = 4, interior: float = 0.9) -> DerivedCurveResult:
    """Tangent indicatrix ``beta(s*) = T(s)``, with ``ds*/ds = kappa``.

    ``coarsen`` sets the derived grid spacing to that many input steps of
    arc length; None keeps the input sample count.
    """
    _check_kappa(fd_a)
    H, Hp = harmonic_curvature(fd_a)
    w2 = 1.0 + H * H
    pred = {
        "kappa": np.sqrt(w2),
        "tau": Hp / (fd_a.kappa * w2) + fd_a.tau_G,
        "tau_G": fd_a.tau_G,
    }
    res = _indicatrix("tangent", fd_a, fd_a.T, fd_a.kappa, pred, coarsen, order, interior)
    res.frame_tangent = fd_a.N
    res.orthogonality = float(np.max(np.abs(np.einsum("ij,ij->i", fd_a.N, fd_a.T))))
    return res


def normal_indicatrix(fd_a: FrenetData, coarsen: int | None = COARSEN["normal"],
                      order: int = 4, interior: float = 0.9) -> DerivedCurveResult:
    """Normal indicatrix ``gamma(s*) = N(s)``, with ``ds*/ds = kappa sqrt(1 + H^2)``.

    The predicted curvature ``sqrt(1 + sigma^2)/|sigma|`` holds pointwise.
    The predicted effective torsion is zero only for slant helices; for
    other curves ``deltas['tau_eff']`` is just the measured magnitude.
    """
    _check_kappa(fd_a)
    H, Hp = harmonic_curvature(fd_a)
    w2 = 1.0 + H * H
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma = fd_a.kappa * w2**1.5 / Hp
        kappa_pred = np.sqrt(1.0 + 1.0 / sigma**2)
    pred = {"kappa": kappa_pred, "tau_G": fd_a.tau_G, "tau_eff": np.zeros(len(fd_a))}
    rate = fd_a.kappa * np.sqrt(w2)
    res = _indicatrix("normal", fd_a, fd_a.N, rate, pred, coarsen, order, interior)
    sl = interior_slice(len(res.fd), interior)
    res.deltas["tau_eff"] = float(np.max(np.abs(res.fd.tau_eff[sl])))
    res.frame_tangent = (-fd_a.T + H[:, None] * fd_a.B) / np.sqrt(w2)[:, None]
    return res


def sign_definite_windows(H: np.ndarray, floor: float = 0.0) -> list[tuple[int, int]]:
    """Maximal index ranges ``[lo, hi)`` on which ``|H| > floor`` with constant sign."""
    sgn = np.where(np.abs(H) > floor, np.sign(H), 0)
    out = []
    start = None
    for i, v in enumerate(sgn):
        if start is not None and v != sgn[start]:
            out.append((start, i))
            start = None
        if start is None and v != 0:
            start = i
    if start is not None:
        out.append((start, len(H)))
    return out


def binormal_indicatrix(fd_a: FrenetData, window: tuple[float, float] | None = None,
                        coarsen: int | None = COARSEN["binormal"], order: int = 4,
                        interior: float = 0.9) -> DerivedCurveResult:
    """Binormal indicatrix ``delta(s*) = B(s)``, with ``ds*/ds = eps kappa H``.

    ``window`` restricts to ``s`` in ``[s_lo, s_hi]``; ``H`` must not vanish
    there. ``eps`` is the sign of ``kappa H`` on the window.

    Raises
    ------
    VanishingH
        If ``|H| <= 1e-6`` somewhere on the window or H changes sign.
    """
    _check_kappa(fd_a)
    H, Hp = harmonic_curvature(fd_a)
    lo, hi = 0, len(fd_a)
    if window is not None:
        idx = np.flatnonzero((fd_a.s >= window[0] - 1e-12) & (fd_a.s <= window[1] + 1e-12))
        lo, hi = int(idx[0]), int(idx[-1]) + 1
    Hw = H[lo:hi]
    if np.any(np.abs(Hw) <= H_VANISH) or (Hw.max() > 0 > Hw.min()):
        raise VanishingH(
            "H vanishes or changes sign on the window; choose a sign-definite window "
            "(see sign_definite_windows)"
        )
    eps = float(np.sign(Hw[0]))
    w2 = 1.0 + H * H
    with np.errstate(divide="ignore", invalid="ignore"):
        pred = {
            "kappa": np.sqrt(w2) / np.abs(H),
            "tau": -Hp / (fd_a.kappa * H * w2) + fd_a.tau_G,
            "tau_G": fd_a.tau_G,
        }
    rate = np.abs(fd_a.kappa * H)
    res = _indicatrix("binormal", fd_a, fd_a.B, rate, pred, coarsen, order, interior, lo, hi)
    res.frame_tangent = -eps * fd_a.N[lo:hi]
    res.orthogonality = float(np.max(np.abs(np.einsum("ij,ij->i", res.frame_tangent, fd_a.T[lo:hi]))))
    res.extras["epsilon"] = eps
    res.extras["window"] = (float(fd_a.s[lo]), float(fd_a.s[hi - 1]))
    return res


def _ambient_involute(curve: SampledCurve, T: np.ndarray, offset: np.ndarray) -> np.ndarray:
    """Embedding-space polyline ``p + (c - s) p T`` (visualization only, not intrinsic)."""
    g, p = curve.group, curve.points
    if g.kind is GroupKind.ABELIAN:
        return p + offset[:, None] * T
    if g.kind is GroupKind.SO3:
        return (p + offset[:, None, None] * (p @ hat(T))).reshape(len(p), 9)
    pure = np.concatenate([np.zeros((len(T), 1)), T], axis=1)
    return p + offset[:, None] * qmul(p, pure)


def involute(curve: SampledCurve, fd_a: FrenetData, c: float, order: int = 4,
             interior: float = 0.9, stride: int = INVOLUTE_STRIDE) -> DerivedCurveResult:
    """Involute with offset constant ``c``: ``x(s) = alpha(s) + (c - s) T(s)``.

    The intrinsic result is the frame-level apparatus: tangent field
    ``T_x = sign(c - s) N`` with arc rate ``|c - s| kappa``, differentiated
    numerically on every ``stride``-th sample. For the abelian group the
    literal point curve is also analyzed (``extras['literal']``); for SO(3)
    and SU(2) ``extras['ambient']`` holds an embedding-space polyline for
    plotting only.

    Raises
    ------
    CuspInRange
        If ``c`` lies within one step of the sampled arc-length range.
    """
    s = fd_a.s
    h = fd_a.h
    if s[0] - h <= c <= s[-1] + h:
        raise CuspInRange(f"c = {c} lies within one step of the range [{s[0]}, {s[-1]}]")
    _check_kappa(fd_a)
    H, Hp = harmonic_curvature(fd_a)
    w2 = 1.0 + H * H
    off = c - s
    sgn = np.sign(off)
    rate = np.abs(off) * fd_a.kappa
    Tx = sgn[:, None] * fd_a.N
    idx = np.arange(0, len(s), max(1, stride))
    meas = frame_from_tangent(fd_a.group, s[idx], Tx[idx], order, rate=rate[idx])
    pred_src = {
        "kappa": np.sqrt(w2) / np.abs(off),
        "tau": Hp / (fd_a.kappa * off * w2) + fd_a.tau_G,
        "tau_G": fd_a.tau_G,
    }
    predicted = {k: v[idx] for k, v in pred_src.items()}
    sl = interior_slice(len(idx), interior)
    deltas = {
        key: float(np.max(np.abs(getattr(meas, key)[sl] - predicted[key][sl])))
        for key in ("kappa", "tau", "tau_G")
    }
    res = DerivedCurveResult(
        "involute", None, meas, predicted, deltas,
        rate_predicted=rate, frame_tangent=Tx,
        orthogonality=float(np.max(np.abs(np.einsum("ij,ij->i", Tx, fd_a.T)))),
    )
    x = _ambient_involute(curve, fd_a.T, off)
    if curve.group.kind is GroupKind.ABELIAN:
        lit = AlgebraCurve(curve.group, s, x)
        lit_fd = frenet_of_algebra_curve(lit, order=order, step=stride * h * float(rate.mean()))
        res.curve = lit_fd.meta["curve"]
        res.rate_measured = lit_fd.meta["input_speed"]
        res.extras["literal"] = lit_fd
    else:
        res.extras["ambient"] = x
    res.extras["c"] = c
    return res
