"""Closed-form cutoff predictions and the tree-height distribution.

Integer ceilings of logarithms are computed exactly by comparing integer
powers, never by rounding floating-point logs: the non-backtracking bounds
are sharp to the step, and ``log(8)/log(2)`` is not guaranteed to be 3.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .errors import BadDegree, BadEpsilon, BadLevel

# finite stand-in for (d log log n) / log n -> infinity
COINCIDE_THRESHOLD = 10.0


def ceil_log(base, x):
    """Smallest integer ``k`` with ``base**k >= x``, for rational ``x > 0``."""
    if base < 2:
        raise ValueError("base must be >= 2")
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    k = 0
    if x >= 1:
        p = Fraction(1)
        while p < x:
            p *= base
            k += 1
        return k
    p = Fraction(1)
    while p / base >= x:
        p /= base
        k -= 1
    return k


def _as_fraction(eps):
    # 0.1 is stored as 0.1000000000000000055...; recover the intended decimal
    return Fraction(eps).limit_denominator(10**12)


def window_constant(d):
    """Gaussian window constant ``2 sqrt(d(d-1)) / (d-2)^(3/2)``."""
    if d < 3:
        raise BadDegree(f"d must be >= 3, got {d}")
    return 2 * math.sqrt(d * (d - 1)) / (d - 2) ** 1.5


def gaussian_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2))


def gaussian_quantile(p):
    """Inverse of :func:`gaussian_cdf` by bracketed root finding."""
    if not 0 < p < 1:
        raise BadLevel(f"quantile level must lie in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    lo, hi = -40.0, 40.0
    return brentq(lambda z: gaussian_cdf(z) - p, lo, hi, xtol=1e-12, rtol=1e-15)


def gaussian(kind, x):
    if kind == "cdf":
        return gaussian_cdf(x)
    if kind == "quantile":
        return gaussian_quantile(x)
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class SRWPrediction:
    n: int
    d: int
    s: float
    cutoff_point: float
    tmix_estimate: float
    window_scale: float
    window_constant: float


def srw_prediction(n, d, s):
    """Predicted SRW mixing time at level ``s`` (cutoff plus Gaussian shift)."""
    if d < 3:
        raise BadDegree(f"d must be >= 3, got {d}")
    if not 0 < s < 1:
        raise BadLevel(f"s must lie in (0, 1), got {s}")
    L = math.log(n) / math.log(d - 1)
    lam = window_constant(d)
    cutoff = d / (d - 2) * L
    est = cutoff - lam * gaussian_quantile(s) * math.sqrt(L)
    return SRWPrediction(n, d, s, cutoff, est, math.sqrt(L), lam)


@dataclass(frozen=True)
class NBRWBounds:
    n: int
    d: int
    epsilon: float
    lower: int  # bound on t_mix(1 - eps)
    upper: int  # bound on t_mix(eps)


def nbrw_bounds(n, d, epsilon):
    if d < 3:
        raise BadDegree(f"d must be >= 3, got {d}")
    if not 0 < epsilon < 1:
        raise BadEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    T = ceil_log(d - 1, d * n)
    k = ceil_log(d - 1, 1 / _as_fraction(epsilon))
    return NBRWBounds(n, d, epsilon, T - k, T + 3 * k + 4)


@dataclass(frozen=True)
class LargeDPrediction:
    n: int
    d: int
    tmix_set: tuple
    srw_window: float
    coincide_ratio: float
    coincide: bool
    proxy: str = f"(d * ln ln n) / ln n >= {COINCIDE_THRESHOLD:g}"


def large_d_predictions(n, d):
    if d < 3:
        raise BadDegree(f"d must be >= 3, got {d}")
    T = ceil_log(d - 1, d * n)
    ln = math.log(n)
    window = math.sqrt(ln / (d * math.log(d)))
    ratio = d * math.log(ln) / ln if ln > 1 else 0.0
    return LargeDPrediction(n, d, (T, T + 1), window, ratio, ratio >= COINCIDE_THRESHOLD)


def tree_height_distribution(d, t):
    """Law of the distance from the root after ``t`` SRW steps on the d-regular tree.

    Returns an array ``h`` of length ``t + 1`` with ``h[k] = P(height = k)``.
    """
    if d < 3:
        raise BadDegree(f"d must be >= 3, got {d}")
    h = np.zeros(t + 2)
    h[0] = 1.0
    up, down = (d - 1) / d, 1 / d
    for _ in range(t):
        nxt = np.zeros_like(h)
        nxt[0] = h[1] * down
        nxt[1] = h[0] + h[2] * down
        nxt[2:-1] = h[1:-2] * up + h[3:] * down
        nxt[-1] = h[-2] * up
        h = nxt
    return h[:t + 1]


def tree_height_path(d, t_max):
    """Yield ``tree_height_distribution(d, t)`` for ``t = 0..t_max`` incrementally."""
    h = np.zeros(t_max + 2)
    h[0] = 1.0
    up, down = (d - 1) / d, 1 / d
    yield h[:1].copy()
    for t in range(1, t_max + 1):
        nxt = np.zeros_like(h)
        nxt[0] = h[1] * down
        nxt[1] = h[0] + h[2] * down
        nxt[2:-1] = h[1:-2] * up + h[3:] * down
        nxt[-1] = h[-2] * up
        h = nxt
        yield h[:t + 1].copy()
