"""M-covers of Tanner graphs, lifted matrices and graph-cover pseudocodewords.

A pseudocodeword of an M-cover is stored variable-major, i.e. as the
vector ``(p[0,0], ..., p[0,M-1], p[1,0], ..., p[n-1,M-1])`` or equivalently
an ``(n, M)`` array. Lifted column ``i*M + l`` holds copy ``l`` of
variable ``i`` and lifted row ``j*M + s`` holds copy ``s`` of check ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ring_code import DEFAULT_LIMIT, ParityCheckMatrix, enumerate_solutions
from .tanner import TannerGraph, from_matrix


class CoverMismatch(ValueError):
    """A cover assignment does not match the Tanner graph it is applied to."""


@dataclass(frozen=True)
class CoverAssignment:
    """Per-edge permutations defining an M-cover.

    ``perms[(i, j)][s]`` is the copy index of variable ``i`` attached to copy
    ``s`` of check ``j`` (all 0-based). ``seed`` records how the cover was
    drawn, if it was drawn at random.
    """

    M: int
    perms: dict
    seed: int | None = None

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be a positive integer")
        frozen = {}
        ident = list(range(self.M))
        for edge, perm in self.perms.items():
            perm = tuple(int(v) for v in perm)
            if sorted(perm) != ident:
                raise ValueError(f"permutation on edge {edge} is not a bijection of 0..{self.M - 1}")
            frozen[(int(edge[0]), int(edge[1]))] = perm
        object.__setattr__(self, "perms", dict(sorted(frozen.items(), key=lambda kv: (kv[0][1], kv[0][0]))))

    def __hash__(self):
        return hash((self.M, tuple(self.perms.items())))

    def sigma(self, i: int, j: int, s: int) -> int:
        return self.perms[(i, j)][s]

    def to_text(self) -> str:
        """Serialise as ``M`` followed by ``i j : pi(1) ... pi(M)`` lines, 1-based."""
        lines = [str(self.M)]
        for (i, j), perm in self.perms.items():
            lines.append(f"{i + 1} {j + 1} : " + " ".join(str(v + 1) for v in perm))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CoverAssignment":
        rows = [ln.strip() for ln in text.splitlines()]
        rows = [(no, ln) for no, ln in enumerate(rows, 1) if ln and not ln.startswith("#")]
        if not rows:
            raise ValueError("empty cover file")
        no, first = rows[0]
        try:
            M = int(first)
        except ValueError:
            raise ValueError(f"line {no}: expected cover size M, got {first!r}") from None
        perms = {}
        for no, ln in rows[1:]:
            head, sep, tail = ln.partition(":")
            try:
                if not sep:
                    raise ValueError
                i, j = (int(t) for t in head.split())
                perm = [int(t) - 1 for t in tail.split()]
            except ValueError:
                raise ValueError(f"line {no}: expected 'i j : pi(1) ... pi(M)'") from None
            if len(perm) != M:
                raise ValueError(f"line {no}: expected {M} permutation entries, got {len(perm)}")
            perms[(i - 1, j - 1)] = perm
        return cls(M, perms)


def _check_cover(G: TannerGraph, cov: CoverAssignment):
    want = {(i, j) for i, j, _ in G.edges}
    if set(cov.perms) != want:
        raise CoverMismatch("cover edges do not match the Tanner graph edges")


def identity_cover(G: TannerGraph, M: int = 1) -> CoverAssignment:
    return CoverAssignment(M, {(i, j): range(M) for i, j, _ in G.edges})


def random_cover(G: TannerGraph, M: int, seed: int) -> CoverAssignment:
    """Draw an independent uniform permutation per edge.

    Permutations come from a Fisher-Yates shuffle driven by a PCG64
    generator seeded with ``seed``; edges are visited in check-major order.
    """
    if M < 1:
        raise ValueError("M must be a positive integer")
    rng = np.random.Generator(np.random.PCG64(seed))
    perms = {}
    for i, j, _ in G.edges:
        perms[(i, j)] = rng.permutation(M)
    return CoverAssignment(M, perms, seed=seed)


def lift_matrix(H: ParityCheckMatrix, cov: CoverAssignment) -> ParityCheckMatrix:
    G = from_matrix(H)
    _check_cover(G, cov)
    M = cov.M
    out = np.zeros((M * H.m, M * H.n), dtype=np.int64)
    for (i, j), perm in cov.perms.items():
        for s in range(M):
            out[j * M + s, i * M + perm[s]] = H.entries[j, i]
    return ParityCheckMatrix(out, H.q)


@dataclass(frozen=True, eq=False)
class Pseudocodeword:
    """Values ``p[i, l]`` of a codeword of the lifted code, shape ``(n, M)``."""

    values: np.ndarray
    q: int

    def __post_init__(self):
        v = np.array(self.values, dtype=np.int64)
        if v.ndim != 2:
            raise ValueError("pseudocodeword values must be an (n, M) array")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_vector(cls, vec, n: int, M: int, q: int) -> "Pseudocodeword":
        return cls(np.asarray(vec, dtype=np.int64).reshape(n, M), q)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def M(self) -> int:
        return self.values.shape[1]

    @property
    def vector(self) -> np.ndarray:
        return self.values.reshape(-1)


@dataclass(frozen=True, eq=False)
class PseudocodewordMatrix:
    """Counts ``m_i(a)`` of symbol ``a`` among the M copies of variable ``i``."""

    counts: np.ndarray
    M: int

    def __post_init__(self):
        c = np.array(self.counts, dtype=np.int64)
        if c.ndim != 2 or c.min(initial=0) < 0:
            raise ValueError("counts must be a nonnegative (n, q) integer array")
        if np.any(c.sum(axis=1) != self.M):
            raise ValueError("every row of a pseudocodeword matrix must sum to M")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @property
    def q(self) -> int:
        return self.counts.shape[1]

    def nonzero_counts(self) -> np.ndarray:
        return self.M - self.counts[:, 0]


@dataclass(frozen=True, eq=False)
class NormalizedMatrix:
    """Fractions ``f_i(k)``; row ``i`` is a probability vector over Z_q."""

    fractions: np.ndarray

    def __post_init__(self):
        f = np.array(self.fractions, dtype=np.float64)
        if f.ndim != 2:
            raise ValueError("normalized matrix must be (n, q)")
        if f.min(initial=0.0) < 0 or f.max(initial=0.0) > 1:
            raise ValueError("fractions must lie in [0, 1]")
        if np.any(np.abs(f.sum(axis=1) - 1.0) > 1e-12):
            raise ValueError("rows of a normalized matrix must sum to 1")
        f.setflags(write=False)
        object.__setattr__(self, "fractions", f)

    @property
    def q(self) -> int:
        return self.fractions.shape[1]

    @property
    def n(self) -> int:
        return self.fractions.shape[0]

    @classmethod
    def from_codeword(cls, c, q: int) -> "NormalizedMatrix":
        c = np.asarray(c, dtype=np.int64)
        f = np.zeros((c.size, q))
        f[np.arange(c.size), c] = 1.0
        return cls(f)


def enumerate_pseudocodewords(
    H: ParityCheckMatrix, cov: CoverAssignment, limit: int = DEFAULT_LIMIT
) -> np.ndarray:
    """All codewords of the lifted code as rows of a ``(N, n*M)`` array."""
    return enumerate_solutions(lift_matrix(H, cov), limit)


def count_matrices(pcws: np.ndarray, n: int, M: int, q: int) -> np.ndarray:
    """Batch form of :func:`pcw_matrix`: ``(N, n*M)`` vectors -> ``(N, n, q)`` counts."""
    p = np.asarray(pcws, dtype=np.int64).reshape(-1, n, M)
    out = np.zeros((p.shape[0], n, q), dtype=np.int64)
    for a in range(q):
        out[:, :, a] = np.count_nonzero(p == a, axis=2)
    return out


def pcw_matrix(p: Pseudocodeword) -> PseudocodewordMatrix:
    counts = count_matrices(p.vector[None, :], p.n, p.M, p.q)[0]
    return PseudocodewordMatrix(counts, p.M)


def normalize(P: PseudocodewordMatrix) -> NormalizedMatrix:
    return NormalizedMatrix(P.counts / P.M)


def normalize_exact(P: PseudocodewordMatrix) -> list[list[Fraction]]:
    return [[Fraction(int(v), P.M) for v in row] for row in P.counts]


def check_theorem1(P: PseudocodewordMatrix, H: ParityCheckMatrix) -> list[tuple[int, int]]:
    """Rows ``(j, l)`` where the nonzero-count inequality fails (exact integers).

    For check ``j`` and ``l`` in its support, the number of nonzero symbols
    over the other variables of the check must be at least the number at
    ``l``.
    """
    nz = P.nonzero_counts()
    bad = []
    for j, support in enumerate(H.supports):
        total = int(sum(nz[i] for i in support))
        for l in support:
            if total - nz[l] < nz[l]:
                bad.append((j, l))
    return bad


def theorem1_violation_count(counts: np.ndarray, M: int, H: ParityCheckMatrix) -> int:
    """Number of violated ``(pseudocodeword, j, l)`` triples over a batch of count matrices."""
    nz = M - np.asarray(counts)[:, :, 0]
    bad = 0
    for support in H.supports:
        s = list(support)
        total = nz[:, s].sum(axis=1, keepdims=True)
        bad += int(np.count_nonzero(total - nz[:, s] < nz[:, s]))
    return bad
