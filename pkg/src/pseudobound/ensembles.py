"""Random parity-check matrices for experiments and property tests."""

from __future__ import annotations

import math

import numpy as np

from .ring_code import ParityCheckMatrix
from .tanner import from_matrix, is_connected


def units(q: int) -> np.ndarray:
    return np.array([a for a in range(1, q) if math.gcd(a, q) == 1], dtype=np.int64)


def random_regular_support(n: int, m: int, c: int, d: int, rng: np.random.Generator, connected: bool = True, max_tries: int = 1000) -> np.ndarray:
    """A 0/1 ``m x n`` matrix with column weight ``c`` and row weight ``d``.

    Starts from a deterministic staircase layout and mixes it with
    degree-preserving edge swaps; resamples until connected if requested.
    """
    if c * n != d * m:
        raise ValueError(f"c*n = {c * n} differs from d*m = {d * m}")
    if c > m or d > n:
        raise ValueError("degrees exceed matrix dimensions")
    for _ in range(max_tries):
        S = np.zeros((m, n), dtype=np.int64)
        for e in range(c * n):
            S[e % m, e // c] = 1
        edges = np.argwhere(S)
        for _ in range(10 * len(edges)):
            a, b = rng.integers(len(edges), size=2)
            (r1, c1), (r2, c2) = edges[a], edges[b]
            if r1 == r2 or c1 == c2 or S[r1, c2] or S[r2, c1]:
                continue
            S[r1, c1] = S[r2, c2] = 0
            S[r1, c2] = S[r2, c1] = 1
            edges[a] = (r1, c2)
            edges[b] = (r2, c1)
        if not connected or is_connected(from_matrix(ParityCheckMatrix(S, 2))):
            return S
    raise RuntimeError("could not draw a connected regular support")


def with_unit_entries(support: np.ndarray, q: int, rng: np.random.Generator) -> ParityCheckMatrix:
    u = units(q)
    vals = rng.choice(u, size=support.shape)
    return ParityCheckMatrix(np.where(support != 0, vals, 0), q)


def random_regular_code(n: int, m: int, c: int, d: int, q: int, rng: np.random.Generator) -> ParityCheckMatrix:
    return with_unit_entries(random_regular_support(n, m, c, d, rng), q, rng)


def random_code(n: int, m: int, q: int, rng: np.random.Generator, min_row_weight: int = 2) -> ParityCheckMatrix:
    """Unit-entry matrix with independent Bernoulli(1/2) support, rows of weight >= ``min_row_weight``."""
    S = np.zeros((m, n), dtype=np.int64)
    for j in range(m):
        while S[j].sum() < min_row_weight:
            S[j] = rng.integers(0, 2, size=n)
    return with_unit_entries(S, q, rng)
