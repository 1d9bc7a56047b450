"""Exact linear algebra over Q by fraction-preserving Gaussian elimination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

Row = list[Fraction]


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> ExactMatrix:
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), cols, data)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def rank(self) -> int:
        return matrix_rank(self)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix.from_rows(matmul(self.entries, other.entries, other.cols), other.cols)


def _rows_of(m) -> list[Row]:
    if isinstance(m, ExactMatrix):
        return [list(r) for r in m.entries]
    return [[Fraction(x) for x in r] for r in m]


def rref(m) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = _rows_of(m)
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                ri = a[r]
                a[i] = [x - f * y for x, y in zip(a[i], ri)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def matrix_rank(m) -> int:
    """Rank over Q."""
    a = _rows_of(m)
    if not a or not a[0]:
        return 0
    rank = 0
    ncols = len(a[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def nullspace(m, ncols: int | None = None) -> list[Row]:
    """Basis of the right kernel {v : M v = 0}."""
    rows = _rows_of(m)
    if ncols is None:
        if not rows:
            raise ValueError("column count needed for an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def left_nullspace(m, nrows: int) -> list[Row]:
    """Basis of {u : u M = 0} for an nrows-by-k matrix M."""
    rows = _rows_of(m)
    if not rows or not rows[0]:
        return [[Fraction(int(i == j)) for j in range(nrows)] for i in range(nrows)]
    return nullspace(list(map(list, zip(*rows))), nrows)


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]], bcols: int) -> list[Row]:
    out = []
    for r in a:
        acc = [Fraction(0)] * bcols
        for x, brow in zip(r, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def determinant(m, exact_div: Callable | None = None, zero=None, one=None):
    """Bareiss fraction-free determinant over any exact ring.

    ``exact_div(a, b)`` must return the exact quotient a/b; for Fractions it
    defaults to ordinary division.
    """
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return one if one is not None else Fraction(1)
    if exact_div is None:
        exact_div = lambda p, q: p / q  # noqa: E731
    if zero is None:
        zero = Fraction(0)
    if one is None:
        one = Fraction(1)
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det
