"""The three 3-dimensional Lie groups with bi-invariant metrics.

Algebra vectors are length-3 arrays in a fixed orthonormal basis
``{X1, X2, X3}``, chosen so that the bracket is ``c * cross`` with structure
constant ``c`` = 0 (abelian R^3), 1 (SO(3)) or 2 (SU(2)). Group elements are
plain arrays:

* abelian: translation vector, shape ``(3,)``
* SO(3): rotation matrix, shape ``(3, 3)``
* SU(2): unit quaternion ``(w, x, y, z)``, shape ``(4,)``

Every function accepts stacks of elements along leading axes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import fd
from .errors import InsufficientSamples, NonUnitSpeed

#: default tolerance on | |T| - 1 | for the unit-speed check
UNIT_SPEED_TOL = 1e-5


class GroupKind(enum.Enum):
    ABELIAN = "abelian"
    SO3 = "so3"
    SU2 = "su2"


@dataclass(frozen=True)
class GroupSpec:
    kind: GroupKind
    c: float

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def tau_G(self) -> float:
        """Group torsion ``c/2`` carried by any right-handed orthonormal frame."""
        return 0.5 * self.c

    @property
    def point_shape(self) -> tuple[int, ...]:
        return {GroupKind.ABELIAN: (3,), GroupKind.SO3: (3, 3), GroupKind.SU2: (4,)}[self.kind]

    @property
    def columns(self) -> list[str]:
        """Coordinate column names used by curve files."""
        if self.kind is GroupKind.ABELIAN:
            return ["x", "y", "z"]
        if self.kind is GroupKind.SU2:
            return ["qw", "qx", "qy", "qz"]
        return [f"r{i}{j}" for i in range(1, 4) for j in range(1, 4)]

    def __repr__(self) -> str:
        return f"GroupSpec({self.name}, c={self.c:g})"


ABELIAN = GroupSpec(GroupKind.ABELIAN, 0.0)
SO3 = GroupSpec(GroupKind.SO3, 1.0)
SU2 = GroupSpec(GroupKind.SU2, 2.0)
GROUPS = {g.name: g for g in (ABELIAN, SO3, SU2)}


def group_spec(name: str | GroupSpec) -> GroupSpec:
    if isinstance(name, GroupSpec):
        return name
    try:
        return GROUPS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown group {name!r}; expected one of {sorted(GROUPS)}") from None


# --------------------------------------------------------------------------
# algebra


def cross(v, w) -> np.ndarray:
    """``v x w`` over the last axis (cheaper than ``np.cross`` for single vectors)."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    out = np.empty(np.broadcast_shapes(v.shape, w.shape))
    out[..., 0] = v[..., 1] * w[..., 2] - v[..., 2] * w[..., 1]
    out[..., 1] = v[..., 2] * w[..., 0] - v[..., 0] * w[..., 2]
    out[..., 2] = v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0]
    return out


def bracket(g: GroupSpec, v, w) -> np.ndarray:
    """Lie bracket ``[v, w] = c * (v x w)``."""
    return g.c * cross(v, w)


def inner(v, w) -> np.ndarray:
    """Bi-invariant metric restricted to the algebra (the basis is orthonormal)."""
    return np.sum(np.asarray(v) * np.asarray(w), axis=-1)


def covariant_rate(g: GroupSpec, T, W, Wdot) -> np.ndarray:
    """Covariant derivative of ``W`` along a curve with tangent ``T``.

    ``D W = Wdot + [T, W] / 2`` where ``Wdot`` is the componentwise derivative.
    """
    return np.asarray(Wdot) + 0.5 * bracket(g, T, W)


def hat(v) -> np.ndarray:
    """Skew matrix of ``v`` so that ``hat(v) @ u == v x u``."""
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1] + (3, 3))
    out[..., 0, 1] = -v[..., 2]
    out[..., 0, 2] = v[..., 1]
    out[..., 1, 0] = v[..., 2]
    out[..., 1, 2] = -v[..., 0]
    out[..., 2, 0] = -v[..., 1]
    out[..., 2, 1] = v[..., 0]
    return out


def vee(A) -> np.ndarray:
    A = np.asarray(A)
    return np.stack([A[..., 2, 1], A[..., 0, 2], A[..., 1, 0]], axis=-1)


# --------------------------------------------------------------------------
# quaternion helpers (w, x, y, z)


def qmul(p, q) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, pv = p[..., :1], p[..., 1:]
    qw, qv = q[..., :1], q[..., 1:]
    w = pw * qw - np.sum(pv * qv, axis=-1, keepdims=True)
    v = pw * qv + qw * pv + cross(pv, qv)
    return np.concatenate([w, v], axis=-1)


def qconj(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return np.concatenate([q[..., :1], -q[..., 1:]], axis=-1)


def _sinc(x):
    # sin(x)/x, accurate near 0
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    xs = np.where(small, 1.0, x)
    return np.where(small, 1.0 - x * x / 6.0 + x**4 / 120.0, np.sin(xs) / xs)


# --------------------------------------------------------------------------
# group operations


def identity(g: GroupSpec) -> np.ndarray:
    if g.kind is GroupKind.ABELIAN:
        return np.zeros(3)
    if g.kind is GroupKind.SO3:
        return np.eye(3)
    return np.array([1.0, 0.0, 0.0, 0.0])


def compose(g: GroupSpec, p, q) -> np.ndarray:
    if g.kind is GroupKind.ABELIAN:
        return np.asarray(p) + np.asarray(q)
    if g.kind is GroupKind.SO3:
        return np.asarray(p) @ np.asarray(q)
    return qmul(p, q)


def inverse(g: GroupSpec, p) -> np.ndarray:
    if g.kind is GroupKind.ABELIAN:
        return -np.asarray(p)
    if g.kind is GroupKind.SO3:
        return np.swapaxes(np.asarray(p), -1, -2)
    return qconj(p)


def exp(g: GroupSpec, v) -> np.ndarray:
    """Group exponential of the algebra vector ``v``.

    SO(3) uses Rodrigues' formula. For SU(2) the algebra vector is the pure
    quaternion ``(0, v)`` itself, so ``exp(v) = cos|v| + sin|v| v/|v|``; with
    this normalization ``s -> exp(s X1)`` has unit speed.
    """
    v = np.asarray(v, dtype=float)
    if g.kind is GroupKind.ABELIAN:
        return v.copy()
    theta = np.linalg.norm(v, axis=-1)
    if g.kind is GroupKind.SU2:
        w = np.cos(theta)[..., None]
        return np.concatenate([w, _sinc(theta)[..., None] * v], axis=-1)
    K = hat(v)
    a = _sinc(theta)[..., None, None]
    # (1 - cos t)/t^2 = sinc(t/2)^2 / 2
    b = (0.5 * _sinc(0.5 * theta) ** 2)[..., None, None]
    return np.eye(3) + a * K + b * (K @ K)


def log(g: GroupSpec, p) -> np.ndarray:
    """Inverse of :func:`exp` on the principal branch."""
    p = np.asarray(p, dtype=float)
    if g.kind is GroupKind.ABELIAN:
        return p.copy()
    if g.kind is GroupKind.SU2:
        # q and -q are distinct in SU(2); principal branch |v| <= pi
        vec = p[..., 1:]
        sn = np.linalg.norm(vec, axis=-1)
        theta = np.arctan2(sn, p[..., 0])
        return vec / _sinc(theta)[..., None]
    w = 0.5 * vee(p - np.swapaxes(p, -1, -2))
    sn = np.linalg.norm(w, axis=-1)
    cs = 0.5 * (np.trace(p, axis1=-2, axis2=-1) - 1.0)
    theta = np.arctan2(sn, cs)
    out = w / _sinc(theta)[..., None]
    near_pi = theta > np.pi - 1e-4
    if np.any(near_pi):
        flat_p = p.reshape(-1, 3, 3)
        flat_out = out.reshape(-1, 3)
        flat_w = w.reshape(-1, 3)
        flat_t = np.reshape(theta, -1)
        for k in np.flatnonzero(np.reshape(near_pi, -1)):
            flat_out[k] = _log_so3_near_pi(flat_p[k], flat_w[k], flat_t[k])
        out = flat_out.reshape(out.shape)
    return out


def _log_so3_near_pi(R, w, theta):
    # sym(R) - cos(theta) I = (1 - cos(theta)) a a^T
    M = 0.5 * (R + R.T) - np.cos(theta) * np.eye(3)
    col = int(np.argmax(np.diag(M)))
    a = M[:, col] / np.linalg.norm(M[:, col])
    if np.dot(a, w) < 0:
        a = -a
    return theta * a


def renormalize(g: GroupSpec, p) -> np.ndarray:
    """Project back onto the group (polar factor for SO(3), unit norm for SU(2))."""
    p = np.asarray(p, dtype=float)
    if g.kind is GroupKind.ABELIAN:
        return p
    if g.kind is GroupKind.SU2:
        return p / np.linalg.norm(p, axis=-1, keepdims=True)
    U, _, Vt = np.linalg.svd(p)
    R = U @ Vt
    if np.any(np.linalg.det(R) < 0):
        raise ValueError("matrix is not close to a proper rotation")
    return R


def advance(g: GroupSpec, p, v, h: float) -> np.ndarray:
    """Right-translate ``p`` by the exponential step: ``p * exp(h v)``."""
    if h <= 0:
        raise ValueError("step must be positive")
    return renormalize(g, compose(g, p, exp(g, h * np.asarray(v, dtype=float))))


def check_element(g: GroupSpec, p, tol: float | None = None) -> bool:
    """True when ``p`` satisfies the representation invariants of ``g``."""
    p = np.asarray(p, dtype=float)
    if p.shape[-len(g.point_shape):] != g.point_shape or not np.all(np.isfinite(p)):
        return False
    if g.kind is GroupKind.SO3:
        tol = 1e-9 if tol is None else tol
        err = np.linalg.norm(np.swapaxes(p, -1, -2) @ p - np.eye(3), axis=(-2, -1))
        return bool(np.all(err <= tol) and np.all(np.linalg.det(p) > 0))
    if g.kind is GroupKind.SU2:
        tol = 1e-12 if tol is None else tol
        return bool(np.all(np.abs(np.linalg.norm(p, axis=-1) - 1.0) <= tol))
    return True


# --------------------------------------------------------------------------
# body velocity


def body_velocity(
    g: GroupSpec,
    points,
    h: float,
    order: int = 4,
    unit_speed_tol: float | None = UNIT_SPEED_TOL,
) -> np.ndarray:
    """Left-trivialized velocity ``T(s) = p(s)^-1 p'(s)`` of a sampled curve.

    The derivative at sample ``k`` is taken of ``t -> log(p_k^-1 p(s_k + t))``
    at ``t = 0``, which keeps the stencil on the manifold.

    Parameters
    ----------
    points : array, shape ``(n,) + g.point_shape``
        Samples on a uniform grid with spacing ``h``.
    unit_speed_tol : float or None
        Raise :class:`NonUnitSpeed` if any interior sample has
        ``| |T| - 1 |`` above this; ``None`` disables the check.
    """
    points = np.asarray(points, dtype=float)
    n = points.shape[0]
    if n < order + 1:
        raise InsufficientSamples(f"need at least {order + 1} samples, got {n}")
    inv = inverse(g, points)
    T = np.zeros((n, 3))
    windows = fd.stencil_windows(n, order)
    # group samples by offset pattern so the logs vectorize
    patterns: dict[tuple[int, ...], list[int]] = {}
    for i, (_, offs) in enumerate(windows):
        patterns.setdefault(offs, []).append(i)
    for offs, idx in patterns.items():
        idx = np.asarray(idx)
        w = fd.stencil_weights(offs)
        for j, wj in zip(offs, w):
            if j == 0 or wj == 0.0:
                continue
            rel = compose(g, inv[idx], points[idx + j])
            T[idx] += wj * log(g, rel)
    T /= h
    if unit_speed_tol is not None and n > 2:
        dev = np.abs(np.linalg.norm(T[1:-1], axis=1) - 1.0)
        if dev.max() > unit_speed_tol:
            raise NonUnitSpeed(float(dev.max()), unit_speed_tol)
    return T
