"""Arithmetic over Z_q, parity-check matrices and solution-space enumeration.

Indices in the Python API are 0-based. The text formats read by the CLI
use 1-based row/column labels where labels appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_LIMIT = 10**7

# number of free-variable assignments processed per vectorised block
_CHUNK = 1 << 16


class InstanceTooLarge(RuntimeError):
    """Raised when an enumeration would exceed the configured limit."""

    def __init__(self, predicted: int, limit: int):
        self.predicted = predicted
        self.limit = limit
        super().__init__(
            f"instance too large: {predicted} candidate assignments exceeds limit {limit}"
        )


class ZeroElementError(ValueError):
    """The zero element has no zero-divisor status."""


@dataclass(frozen=True)
class RingElement:
    value: int
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"modulus must be >= 2, got {self.q}")
        object.__setattr__(self, "value", self.value % self.q)

    def _coerce(self, other) -> int:
        if isinstance(other, RingElement):
            if other.q != self.q:
                raise ValueError("moduli differ")
            return other.value
        return int(other)

    def __add__(self, other):
        return RingElement(self.value + self._coerce(other), self.q)

    __radd__ = __add__

    def __mul__(self, other):
        return RingElement(self.value * self._coerce(other), self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(-self.value, self.q)

    def __sub__(self, other):
        return RingElement(self.value - self._coerce(other), self.q)

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.q) == 1

    def __int__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class ParityCheckMatrix:
    """An ``m x n`` parity-check matrix over Z_q.

    ``entries`` is stored as a read-only int64 array with values in ``[0, q)``.
    Every row must have at least one nonzero entry.
    """

    entries: np.ndarray
    q: int
    supports: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        q = int(self.q)
        if q < 2:
            raise ValueError(f"modulus must be >= 2, got {q}")
        a = np.array(self.entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"parity-check matrix must be a nonempty 2-D array, got shape {a.shape}")
        if a.min() < 0 or a.max() >= q:
            raise ValueError(f"entries must lie in [0, {q})")
        supports = tuple(tuple(int(i) for i in np.flatnonzero(row)) for row in a)
        empty = [j for j, s in enumerate(supports) if not s]
        if empty:
            raise ValueError(f"rows with empty support: {empty}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "supports", supports)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], q: int) -> "ParityCheckMatrix":
        return cls(np.asarray(rows, dtype=np.int64), q)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        if not isinstance(other, ParityCheckMatrix):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.q, self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"ParityCheckMatrix(q={self.q}, entries={self.entries.tolist()})"


def _as_word(H: ParityCheckMatrix, c) -> np.ndarray:
    c = np.asarray([int(v) for v in c], dtype=np.int64)
    if c.shape != (H.n,):
        raise ValueError(f"word has length {c.size}, expected {H.n}")
    if c.size and (c.min() < 0 or c.max() >= H.q):
        raise ValueError(f"word entries must lie in [0, {H.q})")
    return c


def check_satisfied(H: ParityCheckMatrix, c, j: int) -> bool:
    """True iff parity check ``j`` (0-based) is satisfied by ``c``."""
    c = _as_word(H, c)
    if not 0 <= j < H.m:
        raise IndexError(f"row index {j} out of range for {H.m} rows")
    return int(H.entries[j] @ c) % H.q == 0


def is_codeword(H: ParityCheckMatrix, c) -> bool:
    c = _as_word(H, c)
    return not np.any((H.entries @ c) % H.q)


def is_zero_divisor(a: int | RingElement, q: int | None = None) -> bool:
    """Whether nonzero ``a`` is a zero divisor in Z_q.

    Raises ZeroElementError for ``a == 0``, whose status is not a yes/no
    question callers should be asking.
    """
    if isinstance(a, RingElement):
        q, a = a.q, a.value
    if q is None:
        raise TypeError("modulus q is required for a plain integer")
    a %= q
    if a == 0:
        raise ZeroElementError("zero element")
    return math.gcd(a, q) > 1


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    offending: tuple[tuple[int, int], ...] = ()

    def __bool__(self):
        return self.ok


def validate_matrix(H: ParityCheckMatrix) -> ValidationResult:
    """Accept iff every nonzero entry is a unit mod q.

    ``offending`` lists 0-based ``(j, i)`` positions holding zero divisors.
    """
    a = H.entries
    g = np.gcd(a, H.q)
    bad = np.argwhere((a != 0) & (g > 1))
    offending = tuple((int(j), int(i)) for j, i in bad)
    return ValidationResult(not offending, offending)


@dataclass(frozen=True)
class _Echelon:
    pivot_cols: tuple[int, ...]
    free_cols: tuple[int, ...]
    # rows of the reduced matrix restricted to free columns
    pivot_rows: np.ndarray
    residual_rows: np.ndarray


def _reduce(A: np.ndarray, q: int) -> _Echelon:
    R = np.array(A, dtype=np.int64) % q
    m, n = R.shape
    r = 0
    pivots = []
    for col in range(n):
        if r == m:
            break
        cand = [k for k in range(r, m) if R[k, col] and math.gcd(int(R[k, col]), q) == 1]
        if not cand:
            continue
        k = cand[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * pow(int(R[r, col]), -1, q)) % q
        for k in range(m):
            if k != r and R[k, col]:
                R[k] = (R[k] - R[k, col] * R[r]) % q
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in set(pivots)]
    return _Echelon(
        tuple(pivots),
        tuple(free),
        R[:r][:, free],
        R[r:][:, free],
    )


def solution_space_size_bound(A: ParityCheckMatrix) -> int:
    """Number of candidate assignments ``enumerate_solutions`` would try."""
    ech = _reduce(A.entries, A.q)
    return A.q ** len(ech.free_cols)


def _free_assignments(q: int, k: int, start: int, stop: int) -> np.ndarray:
    # lexicographic digits of start..stop-1 in base q, most significant first
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.int64)
    for pos in range(k - 1, -1, -1):
        out[:, pos] = idx % q
        idx //= q
    return out


def enumerate_solutions(A: ParityCheckMatrix, limit: int = DEFAULT_LIMIT) -> np.ndarray:
    """All ``x`` with ``A x^T = 0 (mod q)``, one per row, in lexicographic order.

    Gaussian elimination pivots only on units; the remaining columns are
    exhausted, and rows left over after elimination are checked per
    assignment. This is exact for composite ``q`` as well.
    """
    q, n = A.q, A.n
    ech = _reduce(A.entries, q)
    k = len(ech.free_cols)
    predicted = q**k
    if predicted > limit:
        raise InstanceTooLarge(predicted, limit)

    pivot_cols = np.array(ech.pivot_cols, dtype=np.intp)
    free_cols = np.array(ech.free_cols, dtype=np.intp)
    blocks = []
    for start in range(0, predicted, _CHUNK):
        xf = _free_assignments(q, k, start, min(predicted, start + _CHUNK))
        if ech.residual_rows.shape[0]:
            keep = ~np.any((xf @ ech.residual_rows.T) % q, axis=1)
            xf = xf[keep]
        x = np.zeros((xf.shape[0], n), dtype=np.int64)
        x[:, free_cols] = xf
        if pivot_cols.size:
            x[:, pivot_cols] = (-(xf @ ech.pivot_rows.T)) % q
        blocks.append(x)
    sols = np.concatenate(blocks) if blocks else np.zeros((0, n), dtype=np.int64)
    order = np.lexsort(sols.T[::-1])
    return sols[order]


def brute_force_solutions(A: ParityCheckMatrix, limit: int = 10**6) -> np.ndarray:
    """Filter all ``q**n`` words by the parity checks. Test oracle only."""
    total = A.q**A.n
    if total > limit:
        raise InstanceTooLarge(total, limit)
    words = np.stack(np.unravel_index(np.arange(total), (A.q,) * A.n), axis=1).astype(np.int64)
    keep = ~np.any((words @ A.entries.T) % A.q, axis=1)
    return words[keep]
