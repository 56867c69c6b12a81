"""Linear-programming lower bound on the minimum pseudodistance.

The support fractions ``x`` of every pseudocodeword lie in the cone
``K x >= 0`` where each check ``j`` and each ``l`` in its support contributes
the row ``sum_{i in I_j, i != l} x_i - x_l``. The bound maximises the trace
of an ``n x n`` nonnegative matrix ``y`` of unit mass whose rows and columns
all lie in that cone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import simplex
from .pseudodist import generic_kappa, kappa
from .ring_code import ParityCheckMatrix, validate_matrix
from .spectral_bound import HypothesesUnmet

DEFAULT_TOL = 1e-9


class DegenerateCone(HypothesesUnmet):
    """A weight-1 check forces its variable to zero and collapses the cone."""


class SolverFailure(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class ConeMatrix:
    K: np.ndarray
    rows: tuple[tuple[int, int], ...]  # (j, l) per row of K

    @property
    def n(self) -> int:
        return self.K.shape[1]


def build_cone_matrix(H: ParityCheckMatrix) -> ConeMatrix:
    """Rows ordered by check ``j`` ascending, then ``l`` ascending within its support."""
    rows = []
    labels = []
    for j, support in enumerate(H.supports):
        for l in support:
            r = np.zeros(H.n, dtype=np.int64)
            r[list(support)] = 1
            r[l] = -1
            rows.append(r)
            labels.append((j, l))
    K = np.array(rows, dtype=np.int64).reshape(-1, H.n)
    K.setflags(write=False)
    return ConeMatrix(K, tuple(labels))


@dataclass(frozen=True, eq=False)
class LpInstance:
    """``max sum_i y[i,i]`` over ``y >= 0``, ``sum y = 1``, ``G y >= 0``.

    ``y`` is flattened row-major: variable ``(i, i2)`` sits at ``i*n + i2``.
    ``G`` stacks ``K y[i,:] >= 0`` for every ``i`` and then ``K y[:,i] >= 0``
    for every ``i``.
    """

    n: int
    cone: ConeMatrix
    objective: np.ndarray
    G: np.ndarray

    @property
    def num_variables(self) -> int:
        return self.n * self.n

    @property
    def num_inequalities(self) -> int:
        # nonnegativity plus cone rows
        return self.num_variables + self.G.shape[0]

    def var_name(self, idx: int) -> str:
        i, i2 = divmod(idx, self.n)
        return f"y_{i + 1}_{i2 + 1}"

    def residuals(self, y) -> dict:
        """Constraint violations of ``y`` recomputed from the raw constraint list."""
        y = np.asarray(y, dtype=np.float64).reshape(-1)
        Gy = self.G @ y
        return {
            "nonnegativity": float(max(0.0, -y.min())),
            "mass": float(abs(y.sum() - 1.0)),
            "cone": float(max(0.0, -Gy.min(initial=0.0))),
        }

    def is_feasible(self, y, tol: float = DEFAULT_TOL) -> bool:
        return max(self.residuals(y).values()) <= tol

    def value(self, y) -> float:
        return float(self.objective @ np.asarray(y, dtype=np.float64).reshape(-1))

    def to_lp_text(self) -> str:
        """CPLEX LP text (Maximize / Subject To / Bounds / End)."""
        n = self.n
        names = [self.var_name(k) for k in range(n * n)]
        out = [f"\\ trace maximisation over the cone polytope, n = {n}", "Maximize"]
        out.append(" obj: " + " + ".join(names[i * n + i] for i in range(n)))
        out.append("Subject To")
        out.append(" mass: " + " + ".join(names) + " = 1")
        nk = self.cone.K.shape[0]
        for r, row in enumerate(self.G):
            half, rem = divmod(r, nk)
            j, l = self.cone.rows[rem]
            kind = "row" if half < n else "col"
            idx = half % n
            terms = []
            for k in np.flatnonzero(row):
                coef = int(row[k])
                sign = "-" if coef < 0 else "+"
                mag = abs(coef)
                terms.append(f"{sign} {'' if mag == 1 else str(mag) + ' '}{names[k]}")
            expr = " ".join(terms)
            if expr.startswith("+ "):
                expr = expr[2:]
            out.append(f" {kind}{idx + 1}_c{j + 1}_v{l + 1}: {expr} >= 0")
        out.append("Bounds")
        for name in names:
            out.append(f" {name} >= 0")
        out.append("End")
        return "\n".join(out) + "\n"


def _reject_degenerate(H: ParityCheckMatrix):
    v = validate_matrix(H)
    if not v.ok:
        raise HypothesesUnmet(f"zero-divisor entries at {list(v.offending)}")
    light = [j for j, s in enumerate(H.supports) if len(s) < 2]
    if light:
        raise DegenerateCone(
            f"checks {[j + 1 for j in light]} have weight 1; their variables are forced to zero"
        )


def build_lp(H: ParityCheckMatrix) -> LpInstance:
    _reject_degenerate(H)
    cone = build_cone_matrix(H)
    n = H.n
    K = cone.K
    nk = K.shape[0]
    G = np.zeros((2 * n * nk, n * n), dtype=np.int64)
    for i in range(n):
        # y[i, :] occupies i*n .. i*n+n-1; y[:, i] occupies i, n+i, 2n+i, ...
        G[i * nk : (i + 1) * nk, i * n : (i + 1) * n] = K
        G[(n + i) * nk : (n + i + 1) * nk, i::n] = K
    obj = np.zeros(n * n)
    obj[np.arange(n) * (n + 1)] = 1.0
    G.setflags(write=False)
    obj.setflags(write=False)
    return LpInstance(n, cone, obj, G)


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: str
    optimum: float | None
    y: np.ndarray | None
    iterations: int
    max_residual: float | None = None


def solve_lp(inst: LpInstance, tol: float = DEFAULT_TOL, max_iter: int | None = None) -> LpSolution:
    nv = inst.num_variables
    res = simplex.simplex_max(
        inst.objective,
        A_ub=-inst.G,
        b_ub=np.zeros(inst.G.shape[0]),
        A_eq=np.ones((1, nv)),
        b_eq=np.ones(1),
        tol=tol,
        max_iter=max_iter,
    )
    if res.status != simplex.OPTIMAL:
        return LpSolution(res.status, None, None, res.iterations)
    y = res.x
    resid = max(inst.residuals(y).values())
    status = simplex.OPTIMAL if resid <= tol else simplex.NUMERIC_FAILURE
    return LpSolution(status, inst.value(y), y.reshape(inst.n, inst.n), res.iterations, resid)


def rank_one_embedding(x) -> np.ndarray:
    """``y[i, i2] = x_i x_i2 / (sum x)^2``, flattened."""
    x = np.asarray(x, dtype=np.float64)
    s = x.sum()
    if s <= 0:
        raise ValueError("embedding needs a nonzero nonnegative vector")
    return (np.outer(x, x) / (s * s)).reshape(-1)


@dataclass(frozen=True, eq=False)
class LpBoundReport:
    n: int
    q: int
    optimum: float
    kappa: float
    bound: float
    generic_bound: float
    certificate: np.ndarray
    iterations: int
    max_residual: float

    def to_dict(self) -> dict:
        return {
            "method": "lp",
            "n": self.n,
            "q": self.q,
            "optimum": self.optimum,
            "kappa": self.kappa,
            "bound": self.bound,
            "generic_bound": self.generic_bound,
            "iterations": self.iterations,
            "max_residual": self.max_residual,
            "certificate": self.certificate.tolist(),
        }


def lp_pseudodistance_bound(H: ParityCheckMatrix, q: int | None = None, tol: float = DEFAULT_TOL, inst: LpInstance | None = None) -> LpBoundReport:
    q = H.q if q is None else q
    inst = build_lp(H) if inst is None else inst
    sol = solve_lp(inst, tol)
    if sol.status != simplex.OPTIMAL:
        raise SolverFailure(f"LP solve ended with status {sol.status!r}")
    return LpBoundReport(
        n=H.n,
        q=q,
        optimum=sol.optimum,
        kappa=kappa(q),
        bound=kappa(q) / sol.optimum,
        generic_bound=generic_kappa(q) / sol.optimum,
        certificate=sol.y,
        iterations=sol.iterations,
        max_residual=sol.max_residual,
    )
