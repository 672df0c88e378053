"""Finite-difference stencils on uniform grids.

Central stencils in the interior, one-sided stencils of the same order near
the ends. Weights come from Fornberg's recursion so any even order works,
though the library only exercises 2, 4 and 6.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def stencil_weights(offsets: tuple[int, ...], deriv: int = 1) -> np.ndarray:
    """Weights ``w`` such that ``f^(deriv)(0) ~ sum(w[j] * f(offsets[j])) / h**deriv``.

    Fornberg (1988), specialized to evaluation at 0.
    """
    x = np.asarray(offsets, dtype=float)
    n = len(x)
    if deriv >= n:
        raise ValueError("need more points than the derivative order")
    c = np.zeros((n, deriv + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0]
    for i in range(1, n):
        mn = min(i, deriv)
        c2 = 1.0
        c5 = c4
        c4 = x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    w = c[:, deriv].copy()
    w.setflags(write=False)
    return w


def stencil_windows(n: int, order: int) -> list[tuple[int, tuple[int, ...]]]:
    """Per-sample ``(start, offsets)`` for a first-derivative stencil of ``order``.

    Each window spans ``order + 1`` consecutive samples; it is centred where
    possible and shifted against the boundary otherwise.
    """
    if order < 1 or order % 2:
        raise ValueError(f"order must be a positive even integer, got {order}")
    width = order + 1
    if n < width:
        raise ValueError(f"need at least {width} samples for order {order}, got {n}")
    half = order // 2
    out = []
    for i in range(n):
        start = min(max(i - half, 0), n - width)
        out.append((start, tuple(range(start - i, start - i + width))))
    return out


def derivative(y: np.ndarray, h: float, order: int = 4) -> np.ndarray:
    """First derivative of samples ``y`` (axis 0) on a uniform grid with step ``h``."""
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    width = order + 1
    out = np.empty_like(y)
    half = order // 2
    if n < width:
        raise ValueError(f"need at least {width} samples for order {order}, got {n}")
    # interior: one vectorized pass with the central stencil
    wc = stencil_weights(tuple(range(-half, half + 1)))
    acc = np.zeros_like(y[half:n - half])
    for j, wj in enumerate(wc):
        if wj != 0.0:
            acc += wj * y[j:n - order + j]
    out[half:n - half] = acc
    for i in list(range(half)) + list(range(n - half, n)):
        start = min(max(i - half, 0), n - width)
        offs = tuple(range(start - i, start - i + width))
        w = stencil_weights(offs)
        out[i] = np.tensordot(w, y[start:start + width], axes=(0, 0))
    return out / h
