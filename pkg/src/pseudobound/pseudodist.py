"""Squared pseudodistance for q-ary PSK over AWGN and related closed forms.

Functions taking a normalized matrix accept either a
:class:`~pseudobound.cover.NormalizedMatrix` or a float array whose last two
axes are ``(n, q)``; leading axes are treated as a batch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .cover import NormalizedMatrix

INFINITE = math.inf


@lru_cache(maxsize=None)
def _unit_roots(q: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(q)
    cos = np.cos(2 * np.pi * k / q)
    sin = np.sin(2 * np.pi * k / q)
    cos.setflags(write=False)
    sin.setflags(write=False)
    return cos, sin


def _fractions(F, q: int | None) -> np.ndarray:
    f = F.fractions if isinstance(F, NormalizedMatrix) else np.asarray(F, dtype=np.float64)
    if q is not None and f.shape[-1] != q:
        raise ValueError(f"normalized matrix has {f.shape[-1]} columns, expected q={q}")
    return f


def generic_kappa(q: int) -> float:
    """``(1 - cos(2 pi / q))**2``."""
    return (1.0 - math.cos(2 * math.pi / q)) ** 2


def kappa(q: int) -> float:
    """Constant multiplying ``(sum x)^2 / sum x^2`` in the per-pseudocodeword bound.

    Exact values for q = 2 and 4; the sharper constant 3 for q = 3; the
    generic expression otherwise.
    """
    if q == 2:
        return 4.0
    if q == 3:
        return 3.0
    if q == 4:
        return 1.0
    return generic_kappa(q)


@dataclass(frozen=True)
class SignalPoint:
    re: float
    im: float

    def __abs__(self):
        return math.hypot(self.re, self.im)


def modulate(c, q: int) -> list[SignalPoint]:
    """Natural q-PSK mapping ``k -> exp(2 pi i k / q)``."""
    c = np.asarray(c, dtype=np.int64)
    if c.size and (c.min() < 0 or c.max() >= q):
        raise ValueError(f"symbols must lie in [0, {q})")
    cos, sin = _unit_roots(q)
    return [SignalPoint(float(cos[k]), float(sin[k])) for k in c]


def modulated_distance_sq(c, q: int) -> float:
    """Squared Euclidean distance between modulated ``c`` and the modulated zero word."""
    pts = modulate(c, q)
    return float(sum((p.re - 1.0) ** 2 + p.im**2 for p in pts))


def compute_S(F, q: int | None = None):
    f = _fractions(F, q)
    cos, _ = _unit_roots(f.shape[-1])
    return 2.0 * np.sum(1.0 - f @ cos, axis=-1)


def compute_V(F, q: int | None = None):
    """V via the centroid form ``sum_i |z_i - 1|^2`` with ``z_i = sum_k f_i(k) w^k``."""
    f = _fractions(F, q)
    cos, sin = _unit_roots(f.shape[-1])
    re = f @ cos - 1.0
    im = f @ sin
    return np.sum(re * re + im * im, axis=-1)


def compute_V_termwise(F, q: int | None = None):
    """V summed term by term from its defining double sum. Reference for :func:`compute_V`."""
    f = _fractions(F, q)
    qq = f.shape[-1]
    cos, _ = _unit_roots(qq)
    total = np.sum(f * f, axis=-1)
    for k in range(qq):
        for l in range(k + 1, qq):
            total = total + 2.0 * f[..., k] * f[..., l] * math.cos(2 * math.pi * (k - l) / qq)
    total = total - 2.0 * (f @ cos) + 1.0
    return np.sum(total, axis=-1)


@dataclass(frozen=True)
class PseudodistanceResult:
    S: float
    V: float
    d_squared: float

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.d_squared)

    @property
    def effective_hamming_weight(self) -> float:
        """``d^2 / 4``; meaningful for binary signalling."""
        return self.d_squared / 4.0


# V below this is the all-zero pseudocodeword up to rounding; genuine
# nonzero pseudocodewords have V >= (x_min * (1 - cos(2 pi / q)))**2 >> 1e-15.
_V_ZERO = 1e-15


def pseudodistance_sq_batch(F, q: int | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    f = _fractions(F, q)
    S = compute_S(f)
    V = compute_V(f)
    with np.errstate(divide="ignore", invalid="ignore"):
        d2 = np.where(V > _V_ZERO, S * S / np.where(V > _V_ZERO, V, 1.0), np.inf)
    return S, V, d2


def pseudodistance_sq(F, q: int | None = None) -> PseudodistanceResult:
    f = _fractions(F, q)
    if f.ndim != 2:
        raise ValueError("pseudodistance_sq takes a single (n, q) matrix; use pseudodistance_sq_batch")
    S, V, d2 = pseudodistance_sq_batch(f)
    return PseudodistanceResult(float(S), float(V), float(d2))


def support_fractions(F):
    """``x_i = 1 - f_i(0)`` clamped to ``[0, 1]``."""
    f = _fractions(F, None)
    return np.clip(1.0 - f[..., 0], 0.0, 1.0)


def ratio(x):
    """``(sum x)^2 / sum x^2``, infinite for the zero vector."""
    x = np.asarray(x, dtype=np.float64)
    s1 = x.sum(axis=-1)
    s2 = (x * x).sum(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(s2 > 0, s1 * s1 / np.where(s2 > 0, s2, 1.0), np.inf)


def closed_form_lower(F, q: int | None = None, generic: bool = False):
    """Lower bound ``kappa(q) * (sum x)^2 / sum x^2`` on the squared pseudodistance.

    With ``generic=True`` the unspecialised constant ``(1 - cos(2 pi/q))^2``
    is used for every q.
    """
    f = _fractions(F, q)
    qq = f.shape[-1]
    k = generic_kappa(qq) if generic else kappa(qq)
    r = ratio(support_fractions(f))
    out = k * r
    return float(out) if np.ndim(out) == 0 else out


def gaussian_q(x: float) -> float:
    """Standard normal tail probability."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def pcw_error_probability(d: float, sigma: float) -> float:
    """Pairwise error probability ``Q(d / (2 sigma))``."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if d < 0:
        raise ValueError("distance must be nonnegative")
    if math.isinf(d):
        return 0.0
    return gaussian_q(d / (2.0 * sigma))


def union_bound(distances: Iterable[float], sigma: float) -> float:
    return min(1.0, math.fsum(pcw_error_probability(d, sigma) for d in distances))
