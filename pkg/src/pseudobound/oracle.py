"""Brute-force ground truth over sampled covers, and bound verification.

Sampled covers only reach part of the pseudocodeword set, so the minimum
found here is a "sampled minimum": any valid lower bound must sit below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import cover as cv
from .lp_bound import DegenerateCone, build_lp, lp_pseudodistance_bound, rank_one_embedding
from .pseudodist import closed_form_lower, pseudodistance_sq_batch, ratio
from .ring_code import DEFAULT_LIMIT, ParityCheckMatrix, enumerate_solutions, validate_matrix
from .spectral_bound import HypothesesUnmet, eigenvalue_bound, support_gram
from .tanner import from_matrix, is_connected, regularity

CLOSED_FORM_TOL = 1e-9
GLOBAL_BOUND_TOL = 1e-8
BINARY_TOL = 1e-10
LEMMA3_TOL = 1e-8
LP_TOL = 1e-9


def cover_seed(seed: int, M: int, k: int) -> int:
    """Seed of the ``k``-th sampled ``M``-cover under master ``seed``."""
    return int(np.random.SeedSequence([seed, M, k]).generate_state(1, np.uint64)[0])


def cover_plan(H: ParityCheckMatrix, M_values, covers_per_M: int, seed: int) -> list[cv.CoverAssignment]:
    """The trivial 1-cover first, then ``covers_per_M`` random covers per ``M > 1``."""
    G = from_matrix(H)
    plan = [cv.identity_cover(G, 1)]
    seen = set()
    for M in M_values:
        M = int(M)
        if M < 1:
            raise ValueError("cover sizes must be positive")
        if M == 1 or M in seen:
            continue
        seen.add(M)
        for k in range(covers_per_M):
            plan.append(cv.random_cover(G, M, cover_seed(seed, M, k)))
    return plan


def min_codeword_distance(H: ParityCheckMatrix, limit: int = DEFAULT_LIMIT) -> float:
    """Minimum squared modulated distance over nonzero codewords (inf if none)."""
    words = enumerate_solutions(H, limit)
    cos = np.cos(2 * np.pi * np.arange(H.q) / H.q)
    d2 = np.sum(2.0 * (1.0 - cos[words]), axis=1)
    nonzero = np.any(words != 0, axis=1)
    return float(d2[nonzero].min()) if nonzero.any() else math.inf


@dataclass
class CoverScan:
    cover: cv.CoverAssignment
    pseudocodewords: int
    counts: np.ndarray  # distinct (N, n, q) count matrices
    multiplicity: np.ndarray

    @property
    def M(self) -> int:
        return self.cover.M


def scan_cover(H: ParityCheckMatrix, cov: cv.CoverAssignment, limit: int = DEFAULT_LIMIT) -> CoverScan:
    pcws = cv.enumerate_pseudocodewords(H, cov, limit)
    counts = cv.count_matrices(pcws, H.n, cov.M, H.q)
    flat, mult = np.unique(counts.reshape(counts.shape[0], -1), axis=0, return_counts=True)
    return CoverScan(cov, int(pcws.shape[0]), flat.reshape(-1, H.n, H.q), mult)


@dataclass
class EmpiricalMinimum:
    value: float
    witness: np.ndarray | None
    witness_M: int | None
    witness_seed: int | None
    examined: int


def _minimum(scans: list[CoverScan]) -> EmpiricalMinimum:
    best = math.inf
    witness = None
    wM = wseed = None
    examined = 0
    for sc in scans:
        examined += sc.pseudocodewords
        _, _, d2 = pseudodistance_sq_batch(sc.counts / sc.M)
        if d2.size and np.isfinite(d2).any():
            k = int(np.argmin(d2))
            if d2[k] < best:
                best = float(d2[k])
                witness = sc.counts[k]
                wM, wseed = sc.M, sc.cover.seed
    return EmpiricalMinimum(best, witness, wM, wseed, examined)


def min_pseudodistance_empirical(
    H: ParityCheckMatrix,
    M_values=(),
    covers_per_M: int = 5,
    seed: int = 0,
    limit: int = DEFAULT_LIMIT,
) -> EmpiricalMinimum:
    scans = [scan_cover(H, cov, limit) for cov in cover_plan(H, M_values, covers_per_M, seed)]
    return _minimum(scans)


@dataclass
class SpectralContext:
    c: int
    lambda1: float
    lambda2: float
    H_s: np.ndarray


def check_count_matrices(
    H: ParityCheckMatrix,
    counts: np.ndarray,
    M: int,
    spectral: SpectralContext | None = None,
    lp_inst=None,
    lp_optimum: float | None = None,
) -> dict[str, int]:
    """Violation counts of every per-pseudocodeword check on a batch of count matrices.

    On genuine pseudocodewords every count is zero; feeding arbitrary counts
    exercises the detectors.
    """
    counts = np.asarray(counts, dtype=np.int64).reshape(-1, H.n, H.q)
    out: dict[str, int] = {}
    out["theorem1"] = cv.theorem1_violation_count(counts, M, H)

    F = counts / M
    _, _, d2 = pseudodistance_sq_batch(F)
    nz = M - counts[:, :, 0]
    live = nz.sum(axis=1) > 0
    lower = np.atleast_1d(closed_form_lower(F))
    lower_g = np.atleast_1d(closed_form_lower(F, generic=True))
    out["closed_form"] = int(np.count_nonzero(lower[live] > d2[live] + CLOSED_FORM_TOL))
    out["closed_form_generic"] = int(np.count_nonzero(lower_g[live] > d2[live] + CLOSED_FORM_TOL))
    if H.q == 2:
        x = nz / M
        out["binary_exactness"] = int(np.count_nonzero(np.abs(d2[live] - 4.0 * ratio(x[live])) > BINARY_TOL))

    # per check: (sum x)^2 >= 2 sum x^2 on integer counts; both sides scale by M^2
    lem1 = 0
    for support in H.supports:
        s = nz[:, list(support)]
        lem1 += int(np.count_nonzero(s.sum(axis=1) ** 2 < 2 * (s * s).sum(axis=1)))
    out["lemma1"] = lem1

    if spectral is not None:
        y = nz @ spectral.H_s.T
        ynorm = (y * y).sum(axis=1)
        xnorm = (nz * nz).sum(axis=1)
        out["lemma2"] = int(np.count_nonzero(ynorm < 2 * spectral.c * xnorm))
        lam1, lam2 = spectral.lambda1, spectral.lambda2
        rhs = (lam1 - lam2) / H.n * nz.sum(axis=1).astype(float) ** 2 + lam2 * xnorm
        out["lemma3"] = int(np.count_nonzero(ynorm > rhs + LEMMA3_TOL * (1.0 + np.abs(rhs))))

    if lp_inst is not None:
        bad = 0
        x = (nz / M)[live]
        if x.shape[0]:
            s = x.sum(axis=1)
            Y = (x[:, :, None] * x[:, None, :] / (s * s)[:, None, None]).reshape(x.shape[0], -1)
            feas = (lp_inst.G @ Y.T).min(axis=0) >= -LP_TOL
            vals = Y @ lp_inst.objective
            ok = feas & (vals <= lp_optimum + LP_TOL)
            bad = int(np.count_nonzero(~ok))
        out["rank_one_lp"] = bad
    return out


@dataclass
class VerificationReport:
    code: dict
    covers: list[dict]
    examined: int
    distinct_matrices: int
    sampled_minimum: float
    witness: dict | None
    min_codeword_distance: float
    bounds: dict
    checks: dict[str, int]
    notes: list[str] = field(default_factory=list)

    @property
    def theorem1_violations(self) -> int:
        return self.checks["theorem1"]

    @property
    def all_pass(self) -> bool:
        sound = all(b.get("sound", True) for b in self.bounds.values())
        return sound and not any(self.checks.values())

    def to_dict(self) -> dict:
        def num(v):
            return None if v is None or math.isinf(v) else v

        return {
            "code": self.code,
            "covers": self.covers,
            "pseudocodewords_examined": self.examined,
            "distinct_matrices": self.distinct_matrices,
            "sampled_minimum": num(self.sampled_minimum),
            "witness": self.witness,
            "min_codeword_distance": num(self.min_codeword_distance),
            "bounds": self.bounds,
            "checks": self.checks,
            "all_pass": self.all_pass,
            "notes": self.notes,
        }


def verify_bounds(
    H: ParityCheckMatrix,
    M_values=(2, 3),
    covers_per_M: int = 5,
    seed: int = 0,
    limit: int = DEFAULT_LIMIT,
    extra_covers: list[cv.CoverAssignment] = (),
    eig_tol: float | None = None,
    lp_tol: float | None = None,
) -> VerificationReport:
    notes: list[str] = []
    G = from_matrix(H)
    reg = regularity(G)
    connected = is_connected(G)
    valid = validate_matrix(H)
    code = {
        "n": H.n,
        "m": H.m,
        "q": H.q,
        "regularity": list(reg) if reg else None,
        "connected": connected,
        "units_only": valid.ok,
    }
    if not valid.ok:
        notes.append("matrix has zero-divisor entries; the inequalities are not guaranteed")

    bounds: dict[str, dict] = {}
    spectral = None
    try:
        rep = eigenvalue_bound(H, tol=eig_tol) if eig_tol else eigenvalue_bound(H)
        bounds["eigenvalue"] = rep.to_dict()
        spectral = SpectralContext(rep.c, rep.lambda1, rep.lambda2, support_gram(H).H_s)
    except HypothesesUnmet as exc:
        notes.append(f"eigenvalue bound skipped: {exc}")

    lp_inst = None
    lp_opt = None
    try:
        lp_inst = build_lp(H)
        lp = lp_pseudodistance_bound(H, tol=lp_tol, inst=lp_inst) if lp_tol else lp_pseudodistance_bound(H, inst=lp_inst)
        lp_opt = lp.optimum
        d = lp.to_dict()
        d.pop("certificate")
        bounds["lp"] = d
    except (HypothesesUnmet, DegenerateCone) as exc:
        lp_inst = None
        notes.append(f"LP bound skipped: {exc}")

    plan = cover_plan(H, M_values, covers_per_M, seed) + list(extra_covers)
    scans = [scan_cover(H, cov, limit) for cov in plan]

    checks: dict[str, int] = {}
    for sc in scans:
        for key, v in check_count_matrices(H, sc.counts, sc.M, spectral, lp_inst, lp_opt).items():
            checks[key] = checks.get(key, 0) + v

    emp = _minimum(scans)
    for b in bounds.values():
        if math.isinf(emp.value):
            b["sound"] = True
            b["gap"] = None
        else:
            b["sound"] = bool(b["bound"] <= emp.value + GLOBAL_BOUND_TOL)
            b["gap"] = emp.value - b["bound"]

    witness = None
    if emp.witness is not None:
        witness = {"M": emp.witness_M, "cover_seed": emp.witness_seed, "counts": emp.witness.tolist()}

    return VerificationReport(
        code=code,
        covers=[
            {"M": sc.M, "seed": sc.cover.seed, "pseudocodewords": sc.pseudocodewords, "distinct_matrices": int(sc.counts.shape[0])}
            for sc in scans
        ],
        examined=emp.examined,
        distinct_matrices=int(sum(sc.counts.shape[0] for sc in scans)),
        sampled_minimum=emp.value,
        witness=witness,
        min_codeword_distance=min_codeword_distance(H, limit),
        bounds=bounds,
        checks=checks,
        notes=notes,
    )
