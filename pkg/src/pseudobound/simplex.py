"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Solves ``max c.x  s.t.  A_ub x <= b_ub, A_eq x = b_eq, x >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
NUMERIC_FAILURE = "numeric-failure"


@dataclass(frozen=True, eq=False)
class SimplexResult:
    status: str
    x: np.ndarray | None
    value: float | None
    iterations: int


class _IterationCap(Exception):
    pass


class _Unbounded(Exception):
    pass


def _pivot(T: np.ndarray, row: int, col: int):
    T[row] /= T[row, col]
    colv = T[:, col].copy()
    colv[row] = 0.0
    T -= np.outer(colv, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0


def _iterate(T, basis, allowed: np.ndarray, tol: float, state: dict):
    """Run Bland pivots on tableau ``T`` (last row = reduced costs, minimisation)."""
    R = T.shape[0] - 1
    while True:
        red = T[R, :-1]
        cand = np.flatnonzero((red < -tol) & allowed)
        if cand.size == 0:
            return
        col = int(cand[0])
        colv = T[:R, col]
        pos = np.flatnonzero(colv > tol)
        if pos.size == 0:
            raise _Unbounded
        ratios = T[pos, -1] / colv[pos]
        best = ratios.min()
        ties = pos[ratios <= best + tol * max(1.0, abs(best))]
        row = int(min(ties, key=lambda r: basis[r]))
        if state["iterations"] >= state["cap"]:
            raise _IterationCap
        _pivot(T, row, col)
        basis[row] = col
        state["iterations"] += 1


def simplex_max(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, tol: float = 1e-9, max_iter: int | None = None) -> SimplexResult:
    c = np.asarray(c, dtype=np.float64)
    nv = c.size
    A_ub = np.zeros((0, nv)) if A_ub is None else np.asarray(A_ub, dtype=np.float64).reshape(-1, nv)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=np.float64)
    A_eq = np.zeros((0, nv)) if A_eq is None else np.asarray(A_eq, dtype=np.float64).reshape(-1, nv)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=np.float64)
    nu, ne = A_ub.shape[0], A_eq.shape[0]
    R = nu + ne
    if max_iter is None:
        max_iter = 50 * (nv + R)

    # rows: [x | slacks] = rhs, then artificials where no +1 slack can start basic
    A = np.zeros((R, nv + nu))
    A[:nu, :nv] = A_ub
    A[:nu, nv:] = np.eye(nu)
    A[nu:, :nv] = A_eq
    rhs = np.concatenate([b_ub, b_eq])
    flip = rhs < 0
    A[flip] *= -1
    rhs = np.where(flip, -rhs, rhs)

    basis = [-1] * R
    for r in range(nu):
        if not flip[r]:
            basis[r] = nv + r
    art_rows = [r for r in range(R) if basis[r] < 0]
    na = len(art_rows)
    ncols = nv + nu + na
    T = np.zeros((R + 1, ncols + 1))
    T[:R, : nv + nu] = A
    T[:R, -1] = rhs
    for k, r in enumerate(art_rows):
        T[r, nv + nu + k] = 1.0
        basis[r] = nv + nu + k

    state = {"iterations": 0, "cap": max_iter}
    try:
        # phase 1: minimise the sum of artificials
        if na:
            T[R, nv + nu : ncols] = 1.0
            for r in art_rows:
                T[R] -= T[r]
            _iterate(T, basis, np.ones(ncols, dtype=bool), tol, state)
            if -T[R, -1] > tol * max(1.0, float(np.abs(rhs).max(initial=0.0))):
                return SimplexResult(INFEASIBLE, None, None, state["iterations"])
            # drive zero-level artificials out of the basis; drop redundant rows
            keep = []
            for r in range(R):
                if basis[r] >= nv + nu:
                    cand = np.flatnonzero(np.abs(T[r, : nv + nu]) > tol)
                    if cand.size:
                        _pivot(T, r, int(cand[0]))
                        basis[r] = int(cand[0])
                        keep.append(r)
                else:
                    keep.append(r)
            T = np.vstack([T[keep], T[R : R + 1]])
            basis = [basis[r] for r in keep]
            R = len(keep)
            T = np.delete(T, np.s_[nv + nu : nv + nu + na], axis=1)
            ncols = nv + nu

        # phase 2: minimise -c
        cost = np.zeros(ncols)
        cost[:nv] = -c
        T[R, :-1] = cost
        T[R, -1] = 0.0
        for r, b in enumerate(basis):
            if cost[b] != 0.0:
                T[R] -= cost[b] * T[r]
        _iterate(T, basis, np.ones(ncols, dtype=bool), tol, state)
    except _IterationCap:
        return SimplexResult(NUMERIC_FAILURE, None, None, state["iterations"])
    except _Unbounded:
        return SimplexResult(UNBOUNDED, None, None, state["iterations"])

    x = np.zeros(ncols)
    for r, b in enumerate(basis):
        x[b] = T[r, -1]
    x = np.clip(x[:nv], 0.0, None)
    return SimplexResult(OPTIMAL, x, float(c @ x), state["iterations"])
