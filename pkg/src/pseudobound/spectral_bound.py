"""Eigenvalue lower bound on the minimum pseudodistance of regular codes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pseudodist import generic_kappa, kappa
from .ring_code import ParityCheckMatrix, validate_matrix
from .tanner import from_matrix, is_connected, regularity

DEFAULT_TOL = 1e-12
LAMBDA1_CHECK_TOL = 1e-6


class HypothesesUnmet(ValueError):
    """The code does not satisfy the assumptions a bound is stated under."""


@dataclass(frozen=True, eq=False)
class SupportGram:
    H_s: np.ndarray
    L: np.ndarray


def support_gram(H: ParityCheckMatrix) -> SupportGram:
    Hs = (H.entries != 0).astype(np.int64)
    L = Hs.T @ Hs
    Hs.setflags(write=False)
    L.setflags(write=False)
    return SupportGram(Hs, L)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return math.sqrt(float(np.sum(off * off)))


def jacobi_eigenvalues(A, tol: float = DEFAULT_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations (unsorted).

    Sweeps stop once the off-diagonal Frobenius norm is at most
    ``tol * ||A||_F``.
    """
    a = np.array(A, dtype=np.float64)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("matrix must be square")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be symmetric")
    norm = math.sqrt(float(np.sum(a * a)))
    if n < 2 or norm == 0.0:
        return np.diag(a).copy()
    target = tol * norm
    for _ in range(max_sweeps):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if apr == 0.0:
                    continue
                app, arr = a[p, p], a[r, r]
                h = arr - app
                if abs(h) + 100.0 * abs(apr) == abs(h):
                    # angle ~ apr / h; avoids overflow in theta**2
                    t = apr / h
                else:
                    theta = h / (2.0 * apr)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # rotate columns p, r then rows p, r
                col_p = a[:, p].copy()
                col_r = a[:, r]
                a[:, p] = c * col_p - s * col_r
                a[:, r] = s * col_p + c * col_r
                row_p = a[p, :].copy()
                row_r = a[r, :]
                a[p, :] = c * row_p - s * row_r
                a[r, :] = s * row_p + c * row_r
                a[p, r] = a[r, p] = 0.0
    else:
        if _off_norm(a) > target:
            raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.diag(a).copy()


def symmetric_spectrum(L, tol: float = DEFAULT_TOL) -> np.ndarray:
    """All eigenvalues of symmetric ``L`` sorted in descending order."""
    return np.sort(jacobi_eigenvalues(L, tol))[::-1]


@dataclass(frozen=True)
class SpectralBoundReport:
    lambda1: float
    lambda2: float
    c: int
    d: int
    n: int
    q: int
    kappa: float
    bound: float
    generic_bound: float
    vacuous: bool
    lambda1_residual: float

    def to_dict(self) -> dict:
        return {
            "method": "eigenvalue",
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "c": self.c,
            "d": self.d,
            "n": self.n,
            "q": self.q,
            "kappa": self.kappa,
            "bound": self.bound,
            "generic_bound": self.generic_bound,
            "vacuous": self.vacuous,
            "lambda1_residual": self.lambda1_residual,
        }


def check_hypotheses(H: ParityCheckMatrix) -> tuple[int, int]:
    """Return ``(c, d)`` or raise HypothesesUnmet."""
    v = validate_matrix(H)
    if not v.ok:
        raise HypothesesUnmet(f"zero-divisor entries at {list(v.offending)}")
    G = from_matrix(H)
    reg = regularity(G)
    if reg is None:
        raise HypothesesUnmet("parity-check matrix is not (c,d)-regular")
    if not is_connected(G):
        raise HypothesesUnmet("Tanner graph is not connected")
    return reg


def eigenvalue_bound(H: ParityCheckMatrix, q: int | None = None, tol: float = DEFAULT_TOL) -> SpectralBoundReport:
    """``kappa(q) * n * (2c - lambda2) / (lambda1 - lambda2)`` for connected regular codes."""
    q = H.q if q is None else q
    c, d = check_hypotheses(H)
    eigs = symmetric_spectrum(support_gram(H).L, tol)
    lam1 = float(eigs[0])
    lam2 = float(eigs[1]) if eigs.size > 1 else 0.0
    resid = abs(lam1 - c * d)
    if resid > LAMBDA1_CHECK_TOL:
        raise RuntimeError(f"largest eigenvalue {lam1} differs from c*d = {c * d}")
    if not lam1 > lam2:
        raise HypothesesUnmet("largest eigenvalue is not simple")
    ratio = H.n * (2 * c - lam2) / (lam1 - lam2)
    vacuous = ratio <= 0
    k = kappa(q)
    return SpectralBoundReport(
        lambda1=lam1,
        lambda2=lam2,
        c=c,
        d=d,
        n=H.n,
        q=q,
        kappa=k,
        bound=0.0 if vacuous else k * ratio,
        generic_bound=0.0 if vacuous else generic_kappa(q) * ratio,
        vacuous=vacuous,
        lambda1_residual=resid,
    )
