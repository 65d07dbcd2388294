"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fractions. Every elimination uses the same
deterministic pivot policy: sweep columns left to right and take the first
remaining row with a nonzero entry, so pivot columns are the leftmost
maximal independent set and results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Row = List[Fraction]
Matrix = List[Row]


def copy_matrix(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(row) for row in m]


@dataclass(frozen=True)
class Echelon:
    """Result of an exact row reduction.

    pivots[i] = (original_row_index, column) for the i-th pivot, in the
    order pivots were found. `rows` is the reduced matrix (RREF).
    """

    rank: int
    pivots: Tuple[Tuple[int, int], ...]
    rows: Tuple[Tuple[Fraction, ...], ...]

    @property
    def pivot_columns(self) -> Tuple[int, ...]:
        return tuple(c for _, c in self.pivots)

    @property
    def pivot_rows(self) -> Tuple[int, ...]:
        return tuple(r for r, _ in self.pivots)


def row_reduce(matrix: Sequence[Sequence[Fraction]]) -> Echelon:
    """Reduced row echelon form with a replayable pivot trail."""
    m = copy_matrix(matrix)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    origin = list(range(nrows))
    pivots: List[Tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        origin[r], origin[pr] = origin[pr], origin[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append((origin[r], c))
        r += 1
        if r == nrows:
            break
    return Echelon(
        rank=r,
        pivots=tuple(pivots),
        rows=tuple(tuple(row) for row in m),
    )


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return row_reduce(matrix).rank


def solve(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """One exact solution of A x = b with free variables set to zero.

    Returns None when the system is inconsistent.
    """
    nrows = len(matrix)
    if nrows == 0:
        return []
    ncols = len(matrix[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    ech = row_reduce(aug)
    x: List[Fraction] = [Fraction(0)] * ncols
    for _, c in ech.pivots:
        if c == ncols:
            return None  # pivot in the rhs column: inconsistent
    for i, (_, c) in enumerate(ech.pivots):
        x[c] = ech.rows[i][ncols]
    return x


def nullspace(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Basis of the right kernel {x : A x = 0}."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if nrows == 0:
        return [[Fraction(1) if i == j else Fraction(0) for j in range(ncols)] for i in range(ncols)]
    ech = row_reduce(matrix)
    pivot_cols = set(ech.pivot_columns)
    basis: List[List[Fraction]] = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, (_, c) in enumerate(ech.pivots):
            v[c] = -ech.rows[i][free]
        basis.append(v)
    return basis


def left_null_vector(
    matrix: Sequence[Sequence[Fraction]],
) -> Optional[List[Fraction]]:
    """A nonzero y with y^T A = 0, or None when rows are independent."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    transpose = [[matrix[i][j] for i in range(nrows)] for j in range(ncols)]
    if not transpose:
        return [Fraction(1)] * nrows if nrows else None
    kernel = nullspace(transpose)
    return kernel[0] if kernel else None


class IncrementalRank:
    """Grow a row set one candidate at a time, accepting rank increases.

    Used by the greedy nested-submatrix extractions; deterministic because
    reduction against the stored basis never reorders anything.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._basis: List[Tuple[int, Row]] = []  # (pivot column, reduced row)

    @property
    def rank(self) -> int:
        return len(self._basis)

    def _reduce(self, row: Sequence[Fraction]) -> Row:
        v = list(row)
        for c, b in self._basis:
            if v[c] != 0:
                f = v[c]
                v = [a - f * bb for a, bb in zip(v, b)]
        return v

    def would_increase(self, row: Sequence[Fraction]) -> bool:
        return any(v != 0 for v in self._reduce(row))

    def add(self, row: Sequence[Fraction]) -> bool:
        """Add the row if independent of the current set; report acceptance."""
        v = self._reduce(row)
        c = next((i for i, val in enumerate(v) if val != 0), None)
        if c is None:
            return False
        inv = 1 / v[c]
        v = [val * inv for val in v]
        # keep the stored basis in RREF so a single reduction pass is enough
        for idx, (pc, b) in enumerate(self._basis):
            if b[c] != 0:
                f = b[c]
                self._basis[idx] = (pc, [a - f * vv for a, vv in zip(b, v)])
        self._basis.append((c, v))
        return True
