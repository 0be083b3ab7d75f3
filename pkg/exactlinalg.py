# exactlinalg.py
"""
Exact linear algebra over Z and F_p.

- IntMatrix holds Python ints (arbitrary precision); Smith normal form works on
  plain nested lists of ints so entry growth can never overflow.
- FpMatrix holds a numpy int64 array with entries in 0..p-1; elimination is
  vectorised row operations, and products stay below p^2 so int64 is safe.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from errors import NotPrimeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def is_diagonal(self) -> bool:
        return all(
            self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    bt = B.transpose()
    out = []
    for i in range(A.rows):
        ra = A.row(i)
        for j in range(B.cols):
            out.append(sum(x * y for x, y in zip(ra, bt.row(j))))
    return IntMatrix(A.rows, B.cols, tuple(out))


def determinant(M: IntMatrix) -> int:
    """Bareiss fraction-free elimination; exact."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_lists()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SnfResult:
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    def invariants(self) -> Tuple[int, ...]:
        """Nonzero diagonal entries, in divisor-chain order."""
        return tuple(d for d in self.S.diagonal() if d != 0)


class _Snf:
    """Working state: A is mutated in place; U and V record the operations."""

    def __init__(self, M: IntMatrix, transforms: bool):
        self.m, self.n = M.rows, M.cols
        self.A = M.to_lists()
        self.transforms = transforms
        if transforms:
            self.U = IntMatrix.identity(self.m).to_lists()
            self.V = IntMatrix.identity(self.n).to_lists()

    # row ops act on A and U, column ops on A and V

    def swap_rows(self, i, j):
        if i != j:
            self.A[i], self.A[j] = self.A[j], self.A[i]
            if self.transforms:
                self.U[i], self.U[j] = self.U[j], self.U[i]

    def swap_cols(self, i, j):
        if i != j:
            for r in self.A:
                r[i], r[j] = r[j], r[i]
            if self.transforms:
                for r in self.V:
                    r[i], r[j] = r[j], r[i]

    def add_row(self, dst, src, q):
        # row_dst += q * row_src
        if q:
            a_src, a_dst = self.A[src], self.A[dst]
            for k in range(self.n):
                if a_src[k]:
                    a_dst[k] += q * a_src[k]
            if self.transforms:
                u_src, u_dst = self.U[src], self.U[dst]
                for k in range(self.m):
                    if u_src[k]:
                        u_dst[k] += q * u_src[k]

    def add_col(self, dst, src, q):
        # col_dst += q * col_src
        if q:
            for r in self.A:
                if r[src]:
                    r[dst] += q * r[src]
            if self.transforms:
                for r in self.V:
                    if r[src]:
                        r[dst] += q * r[src]

    def negate_row(self, i):
        self.A[i] = [-x for x in self.A[i]]
        if self.transforms:
            self.U[i] = [-x for x in self.U[i]]

    def _min_entry(self, t):
        best = None
        for i in range(t, self.m):
            row = self.A[i]
            for j in range(t, self.n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best
        return best

    def run(self):
        A = self.A
        for t in range(min(self.m, self.n)):
            best = self._min_entry(t)
            if best is None:
                break
            _, i, j = best
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            while True:
                d = A[t][t]
                dirty = False
                for i in range(t + 1, self.m):
                    if A[i][t]:
                        self.add_row(i, t, -(A[i][t] // d))
                        dirty = dirty or A[i][t] != 0
                for j in range(t + 1, self.n):
                    if A[t][j]:
                        self.add_col(j, t, -(A[t][j] // d))
                        dirty = dirty or A[t][j] != 0
                if dirty:
                    # a remainder smaller than the pivot survived; move it into place
                    cand = [(abs(A[i][t]), i, t) for i in range(t + 1, self.m) if A[i][t]]
                    cand += [(abs(A[t][j]), t, j) for j in range(t + 1, self.n) if A[t][j]]
                    _, i, j = min(cand)
                    self.swap_rows(t, i)
                    self.swap_cols(t, j)
                    continue
                bad = self._non_divisible(t, d)
                if bad is None:
                    break
                # row_t += row_i puts a non-multiple of d into row t
                self.add_row(t, bad, 1)
            if A[t][t] < 0:
                self.negate_row(t)

    def _non_divisible(self, t, d):
        for i in range(t + 1, self.m):
            row = self.A[i]
            for j in range(t + 1, self.n):
                if row[j] % d:
                    return i
        return None


def smith_normal_form(M: IntMatrix) -> SnfResult:
    work = _Snf(M, transforms=True)
    work.run()
    logger.debug("[SNF] %dx%d diagonal %s", M.rows, M.cols,
                 [work.A[i][i] for i in range(min(M.rows, M.cols))])
    return SnfResult(
        S=IntMatrix.from_rows(work.A, cols=M.cols),
        U=IntMatrix.from_rows(work.U, cols=M.rows),
        V=IntMatrix.from_rows(work.V, cols=M.cols),
    )


def smith_invariants(M: IntMatrix) -> Tuple[int, ...]:
    """Nonzero Smith diagonal without tracking U and V."""
    work = _Snf(M, transforms=False)
    work.run()
    return tuple(
        work.A[i][i] for i in range(min(M.rows, M.cols)) if work.A[i][i] != 0
    )


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------

def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or p < 2 or not isprime(int(p)):
        raise NotPrimeError(f"{p!r} is not a prime")
    return int(p)


@dataclass(frozen=True, eq=False)
class FpMatrix:
    p: int
    data: np.ndarray

    def __post_init__(self):
        check_prime(self.p)
        if self.data.ndim != 2:
            raise ValueError("FpMatrix data must be two-dimensional")
        self.data.setflags(write=False)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "FpMatrix":
        p = check_prime(p)
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        arr = np.zeros((len(rows), cols), dtype=np.int64)
        for i, r in enumerate(rows):
            arr[i, :] = [x % p for x in r]
        return cls(p, arr)

    def to_lists(self) -> List[List[int]]:
        return self.data.tolist()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.p, self.data.shape, self.data.tobytes()))


def modp_reduce(M: IntMatrix, p: int) -> FpMatrix:
    p = check_prime(p)
    arr = np.array([x % p for x in M.entries], dtype=np.int64).reshape(M.rows, M.cols)
    return FpMatrix(p, arr)


def _rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    a = a.copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def fp_rref(M: FpMatrix) -> Tuple[FpMatrix, List[int]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    red, pivots = _rref(M.data, M.p)
    return FpMatrix(M.p, red), pivots


def fp_rank(M: FpMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = _rref(M.data, M.p)
    return len(pivots)


def fp_nullspace(M: FpMatrix) -> List[Tuple[int, ...]]:
    p, n = M.p, M.cols
    red, pivots = _rref(M.data, p)
    free = [c for c in range(n) if c not in set(pivots)]
    if not free:
        return []
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(pivots):
            basis[k, c] = (-red[r, f]) % p
    echelon, _ = _rref(basis, p)
    return [tuple(int(x) for x in row) for row in echelon]


def betti_lower_bound_check(M: IntMatrix, q: int) -> bool:
    """True iff M has full column rank mod q; then its rank over Q is cols as well."""
    return fp_rank(modp_reduce(M, q)) == M.cols


def rational_rank(M: IntMatrix) -> int:
    return len(smith_invariants(M))
