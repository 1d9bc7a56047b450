"""Exact arithmetic substrate: rationals, sparse polynomials, jets, linear algebra."""

from fractions import Fraction as ExactRational

from .elimination import TrivialElimination, are_coprime, is_squarefree, resultant
from .jet import Jet, jet_basis
from .matrix import ExactMatrix, left_nullspace, matrix_rank, nullspace, rref
from .polynomial import SparsePolynomial, divide_exact, format_polynomial, monomials_of_degree
from .univariate import cyclotomic, rational_roots

__all__ = [
    "ExactRational",
    "ExactMatrix",
    "Jet",
    "SparsePolynomial",
    "TrivialElimination",
    "are_coprime",
    "cyclotomic",
    "divide_exact",
    "format_polynomial",
    "is_squarefree",
    "jet_basis",
    "left_nullspace",
    "matrix_rank",
    "monomials_of_degree",
    "nullspace",
    "rational_roots",
    "resultant",
    "rref",
]
