"""Acceptance gate: one test per criterion, each at its stated tolerance."""

import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from pseudobound import cover as cv
from pseudobound.ensembles import random_regular_code
from pseudobound.lp_bound import build_lp, lp_pseudodistance_bound, solve_lp
from pseudobound.oracle import (
    cover_plan,
    min_codeword_distance,
    min_pseudodistance_empirical,
    scan_cover,
    verify_bounds,
)
from pseudobound.pseudodist import compute_V, compute_V_termwise, pseudodistance_sq_batch, ratio
from pseudobound.ring_code import ParityCheckMatrix, brute_force_solutions, enumerate_solutions
from pseudobound.spectral_bound import eigenvalue_bound

from .corpus import COVERS_PER_M, ENUM_LIMIT, M_VALUES, build_corpus

TRI = [[1, 1, 1]]


@pytest.fixture(scope="module")
def corpus():
    return build_corpus()


@pytest.fixture(scope="module")
def corpus_scans(corpus):
    return {
        label: [scan_cover(H, cov, ENUM_LIMIT) for cov in cover_plan(H, M_VALUES, COVERS_PER_M, 0)]
        for label, H in corpus
    }


def _single_check(q):
    H = ParityCheckMatrix.from_rows(TRI, q)
    t0 = time.perf_counter()
    eig = eigenvalue_bound(H).bound
    lp = lp_pseudodistance_bound(H).bound
    emp = min_pseudodistance_empirical(H, (2, 3), 5, seed=0).value
    return H, eig, lp, emp, time.perf_counter() - t0


def test_criterion_1_binary_triangle(criterion):
    _, eig, lp, emp, dt = _single_check(2)
    ok = all(abs(v - 8.0) <= 1e-6 for v in (eig, lp, emp)) and dt < 1.0
    criterion(1, ok, f"eig={eig!r} lp={lp!r} sampled={emp!r} t={dt:.3f}s")


def test_criterion_2_ternary_triangle(criterion):
    H, eig, lp, _, dt = _single_check(3)
    lp_opt = lp_pseudodistance_bound(H).optimum
    dmin = min_codeword_distance(H)
    ok = (
        all(abs(v - 6.0) <= 1e-6 for v in (eig, lp, dmin))
        and abs(lp_opt - 0.5) <= 1e-6
        and dt < 1.0
    )
    criterion(2, ok, f"eig={eig!r} lp={lp!r} max f'={lp_opt!r} dmin={dmin!r} t={dt:.3f}s")


def test_criterion_3_quaternary_triangle(criterion):
    _, eig, lp, emp, dt = _single_check(4)
    ok = abs(eig - 2.0) <= 1e-6 and abs(lp - 2.0) <= 1e-6 and emp >= 2.0 and dt < 1.0
    criterion(3, ok, f"eig={eig!r} lp={lp!r} sampled={emp!r} t={dt:.3f}s")


def test_criterion_4_spectral_facts(criterion):
    rng = np.random.default_rng(4)
    shapes = [(12, 8, 2, 3), (20, 10, 3, 6), (30, 15, 2, 4), (24, 18, 3, 4), (30, 20, 2, 3)]
    t0 = time.perf_counter()
    worst = 0.0
    gaps_ok = True
    count = 0
    for k in range(25):
        n, m, c, d = shapes[k % len(shapes)]
        q = int(rng.choice([2, 3, 5, 7]))
        rep = eigenvalue_bound(random_regular_code(n, m, c, d, q, rng))
        worst = max(worst, abs(rep.lambda1 - c * d))
        gaps_ok &= rep.lambda1 > rep.lambda2
        count += 1
    dt = time.perf_counter() - t0
    ok = count >= 20 and worst <= 1e-8 and gaps_ok and dt < 10.0
    criterion(4, ok, f"codes={count} max|l1-cd|={worst:.2e} simple={gaps_ok} t={dt:.2f}s")


def test_criterion_5_soundness(criterion, corpus):
    qs = {H.q for _, H in corpus}
    t0 = time.perf_counter()
    totals: dict[str, int] = {}
    unsound = []
    for label, H in corpus:
        rep = verify_bounds(H, M_VALUES, COVERS_PER_M, seed=0, limit=ENUM_LIMIT)
        for key, v in rep.checks.items():
            totals[key] = totals.get(key, 0) + v
        unsound += [f"{label}:{k}" for k, b in rep.bounds.items() if not b["sound"]]
    dt = time.perf_counter() - t0
    violations = sum(totals.values()) + len(unsound)
    ok = qs == {2, 3, 4, 5} and violations == 0 and dt < 60.0
    criterion(5, ok, f"codes={len(corpus)} violations={violations} {totals} unsound={unsound} t={dt:.2f}s")


def test_criterion_6_exact_identities(criterion, corpus, corpus_scans):
    cw_err = 0.0
    for _, H in corpus:
        words = enumerate_solutions(H)
        words = words[np.any(words != 0, axis=1)]
        if not words.size:
            continue
        F = np.eye(H.q)[words]
        _, _, d2 = pseudodistance_sq_batch(F)
        direct = np.sum(2 * (1 - np.cos(2 * np.pi * words / H.q)), axis=1)
        cw_err = max(cw_err, float(np.max(np.abs(d2 - direct))))

    bin_err = 0.0
    v_err = 0.0
    for label, H in corpus:
        for sc in corpus_scans[label]:
            F = sc.counts / sc.M
            v_err = max(v_err, float(np.max(np.abs(compute_V(F) - compute_V_termwise(F)))))
            if H.q == 2:
                _, _, d2 = pseudodistance_sq_batch(F)
                live = np.isfinite(d2)
                x = F[live, :, 1]
                bin_err = max(bin_err, float(np.max(np.abs(d2[live] - 4 * ratio(x)), initial=0.0)))
    ok = cw_err <= 1e-12 and bin_err <= 1e-10 and v_err <= 1e-10
    criterion(6, ok, f"codeword={cw_err:.1e} binary={bin_err:.1e} centroid={v_err:.1e}")


def test_criterion_7_enumeration_oracle(criterion, corpus):
    checked = 0
    mismatches = []
    for label, H in corpus:
        instances = [H] + [cv.lift_matrix(H, cov) for cov in cover_plan(H, M_VALUES, COVERS_PER_M, 0)]
        for A in instances:
            if A.q ** A.n > 10**6:
                continue
            fast = enumerate_solutions(A)
            slow = brute_force_solutions(A)
            checked += 1
            if not np.array_equal(fast, slow):
                mismatches.append(f"{label} n={A.n}")
    ok = checked > 0 and not mismatches
    criterion(7, ok, f"instances={checked} mismatches={mismatches}")


def test_criterion_8_lp_self_check(criterion, corpus):
    solved = 0
    worst_res = worst_obj = 0.0
    repeatable = True
    for _, H in corpus:
        inst = build_lp(H)
        sol = solve_lp(inst)
        if sol.status != "optimal":
            criterion(8, False, f"status {sol.status}")
        y = sol.y.ravel()
        worst_res = max(worst_res, max(inst.residuals(y).values()))
        worst_obj = max(worst_obj, abs(inst.value(y) - sol.optimum))
        again = solve_lp(inst)
        repeatable &= again.optimum == sol.optimum and np.array_equal(again.y, sol.y)
        solved += 1
    ok = solved == len(corpus) and worst_res <= 1e-9 and worst_obj <= 1e-9 and repeatable
    criterion(8, ok, f"LPs={solved} residual={worst_res:.1e} objective={worst_obj:.1e} repeatable={repeatable}")


def test_criterion_9_determinism(criterion, tmp_path):
    path = tmp_path / "h.txt"
    path.write_text("6 4 3\n1 2 1 0 0 0\n0 1 0 2 1 0\n0 0 1 1 0 2\n2 0 0 0 1 1\n")
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        res = subprocess.run(
            [sys.executable, "-m", "pseudobound", "verify", "-i", str(path), "--seed", "5", "--format", "json"],
            capture_output=True,
            env=env,
        )
        assert res.returncode == 0, res.stderr
        outs.append(res.stdout)
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    criterion(9, ok, f"bytes={len(outs[0])} identical={outs[0] == outs[1]}")
