"""Sylvester resultants and derived squarefreeness / coprimality tests."""

from __future__ import annotations

from .matrix import determinant
from .polynomial import SparsePolynomial, divide_exact


class TrivialElimination(ValueError):
    """One of the inputs does not involve the eliminated variable."""


def sylvester_matrix(p: SparsePolynomial, q: SparsePolynomial, var: str) -> list[list[SparsePolynomial]]:
    """Sylvester matrix with the rows of the first operand first, columns from the top power down."""
    m, n = p.degree(var), q.degree(var)
    zero = SparsePolynomial.zero(p.vars)
    pc, qc = p.coefficients_in(var), q.coefficients_in(var)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + (m - k)] = pc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + (n - k)] = qc.get(k, zero)
        rows.append(row)
    return rows


def resultant(p: SparsePolynomial, q: SparsePolynomial, var: str) -> SparsePolynomial:
    """Res_var(p, q); the result keeps the full variable list but no longer involves var.

    Sign convention: the determinant of the Sylvester matrix with the rows of q
    first, so that Res_x(x - a, x - b) = b - a.  Raises TrivialElimination if
    p or q has degree 0 in var.
    """
    if p.vars != q.vars:
        raise ValueError("resultant operands must share variables")
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if p.degree(var) < 1 or q.degree(var) < 1:
        raise TrivialElimination(f"an operand is constant in {var}")
    rows = sylvester_matrix(q, p, var)
    zero = SparsePolynomial.zero(p.vars)
    one = SparsePolynomial.constant(p.vars, 1)
    return determinant(rows, exact_div=divide_exact, zero=zero, one=one)


def discriminant_vanishes(p: SparsePolynomial, var: str) -> bool:
    """True iff p has a repeated factor of positive degree in var."""
    if p.degree(var) < 2:
        return False
    return resultant(p, p.diff(var), var).is_zero()


def is_squarefree(p: SparsePolynomial) -> bool:
    """Squarefree test without factoring: every repeated factor shows up in some discriminant."""
    if p.is_zero():
        return False
    return not any(discriminant_vanishes(p, v) for v in p.vars)


def are_coprime(p: SparsePolynomial, q: SparsePolynomial) -> bool:
    """True iff p and q share no nonconstant factor."""
    if p.is_zero() or q.is_zero():
        return False
    for v in p.vars:
        if p.degree(v) >= 1 and q.degree(v) >= 1:
            if resultant(p, q, v).is_zero():
                return False
    return True
