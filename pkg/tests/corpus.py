"""Deterministic corpus of small codes shared by the soundness and acceptance tests."""

from __future__ import annotations

import numpy as np

from pseudobound import cover as cv
from pseudobound.ensembles import random_code, random_regular_code
from pseudobound.oracle import cover_plan
from pseudobound.ring_code import solution_space_size_bound

CORPUS_SEED = 20240601
M_VALUES = (2, 3)
COVERS_PER_M = 5
ENUM_LIMIT = 400_000

# (n, m, c, d) with c*n == d*m
REGULAR_SHAPES = [
    (3, 1, 1, 3),
    (3, 2, 2, 3),
    (4, 2, 2, 4),
    (4, 3, 3, 4),
    (4, 4, 2, 2),
    (5, 5, 2, 2),
    (6, 4, 2, 3),
]

IRREGULAR_SHAPES = [(4, 2), (5, 3), (5, 4), (6, 4)]


def _fits(H) -> bool:
    for cov in cover_plan(H, M_VALUES, COVERS_PER_M, 0):
        if solution_space_size_bound(cv.lift_matrix(H, cov)) > ENUM_LIMIT:
            return False
    return True


def build_corpus():
    """Codes over q in {2,3,4,5} with n <= 6, m <= 4 whose sampled covers are enumerable.

    Returns a list of ``(label, H)``. Shapes whose lifted codes are too large
    for a given q are redrawn a few times and dropped if they never fit.
    """
    rng = np.random.default_rng(CORPUS_SEED)
    out = []
    for q in (2, 3, 4, 5):
        for n, m, c, d in REGULAR_SHAPES:
            if m > 4:
                continue
            for _ in range(4):
                H = random_regular_code(n, m, c, d, q, rng)
                if _fits(H):
                    out.append((f"reg{n}x{m}-c{c}d{d}-q{q}", H))
                    break
        for n, m in IRREGULAR_SHAPES:
            for _ in range(4):
                H = random_code(n, m, q, rng)
                if _fits(H):
                    out.append((f"irr{n}x{m}-q{q}", H))
                    break
    return out
