from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conemono.exact import (
    ExactMatrix,
    Jet,
    SparsePolynomial,
    TrivialElimination,
    cyclotomic,
    divide_exact,
    matrix_rank,
    nullspace,
    rational_roots,
    resultant,
)
from conemono.exact.elimination import are_coprime, is_squarefree
from conemono.exact.numberfield import gcd_degrees_over_extension
from conemono.parsing import parse_polynomial

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(s, v=XY):
    return parse_polynomial(s, v)


def to_sympy(p):
    syms = sympy.symbols(p.vars)
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**a for s, a in zip(syms, e)])
               for e, c in p.terms.items())


# -- matrix_rank -------------------------------------------------------

def test_rank_identity():
    assert matrix_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3


def test_rank_proportional_rows():
    assert matrix_rank([[1, 2], [2, 4]]) == 1


def test_rank_vandermonde():
    V = [[x**k for k in range(3)] for x in (0, 1, 2)]
    assert matrix_rank(ExactMatrix.from_rows(V)) == 3


small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@given(small_matrices)
@settings(max_examples=60, deadline=None)
def test_rank_equals_transpose_rank(rows):
    m = ExactMatrix.from_rows(rows)
    assert m.rank() == m.transpose().rank()
    assert m.rank() == sympy.Matrix(rows).rank()


@given(small_matrices)
@settings(max_examples=40, deadline=None)
def test_nullspace_is_kernel(rows):
    basis = nullspace(rows)
    assert len(basis) == len(rows[0]) - matrix_rank(rows)
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


# -- rational_roots ----------------------------------------------------

def t(s):
    return P(s, ("t",))


def test_rational_roots_examples():
    assert rational_roots(t("t^2 - 1")) == [-1, 1]
    assert rational_roots(t("2*t^2 - 3*t + 1")) == [Fraction(1, 2), 1]
    assert rational_roots(t("t^2 + 1")) == []


def test_rational_roots_multiplicity_and_zero():
    assert rational_roots(t("t^3*(t - 2/3)^2*(t + 5)")) == [-5, 0, 0, 0, Fraction(2, 3), Fraction(2, 3)]


def test_rational_roots_large_coefficients():
    p = t("(12345678901*t - 98765432101)*(t^2 - 2)*(7*t + 1000003)")
    assert rational_roots(p) == [Fraction(-1000003, 7), Fraction(98765432101, 12345678901)]


@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=0, max_size=5),
       st.lists(st.integers(-5, 5), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_rational_roots_by_substitution(roots, extra):
    tpoly = SparsePolynomial.variable(("t",), "t")
    p = SparsePolynomial.constant(("t",), 1)
    for r in roots:
        p = p * (tpoly - r)
    # an extra factor t^2 + c^2 + 1 never has rational roots
    for c in extra[:1]:
        p = p * (tpoly * tpoly + (c * c + 1))
    got = rational_roots(p)
    assert got == sorted(roots)
    assert all(p.value([r]) == 0 for r in got)


# -- resultant ---------------------------------------------------------

def test_resultant_circle_line():
    r = resultant(P("x^2 + y^2 - 1"), P("x - y"), "x")
    assert r == P("2*y^2 - 1")


def test_resultant_common_factor():
    assert resultant(P("x"), P("x"), "x").is_zero()


def test_resultant_linear_sign_convention():
    v = ("x", "a", "b")
    assert resultant(P("x - a", v), P("x - b", v), "x") == P("b - a", v)


def test_resultant_trivial_elimination():
    with pytest.raises(TrivialElimination):
        resultant(P("x^2 + y"), P("y^3 + 1"), "x")


@pytest.mark.parametrize("p,q", [
    ("x^3 - 2*x*y + y^2", "x^2*y - 3*x + 1"),
    ("y^2*x - x^3 + 1", "x^2 + y^2 - 4"),
    ("x^4 + y*x + 3", "2*x^3 - y^2"),
])
def test_resultant_matches_sympy(p, q):
    x, y = sympy.symbols("x y")
    ours = to_sympy(resultant(P(p), P(q), "x"))
    theirs = sympy.resultant(to_sympy(P(p)), to_sympy(P(q)), x)
    assert sympy.expand(ours - theirs) == 0 or sympy.expand(ours + theirs) == 0
    assert sympy.expand(ours - theirs) == 0  # same sign convention as the classical Res(p, q)


def test_squarefree_and_coprime():
    assert is_squarefree(P("y^2 - x^3"))
    assert not is_squarefree(P("(y - x)^2*(x + 1)"))
    assert not is_squarefree(P("x^2*(y + 1)"))
    assert are_coprime(P("x"), P("y"))
    assert not are_coprime(P("x*(x + y)"), P("(x + y)*y"))


def test_divide_exact():
    a, b = P("x^2 - y^2"), P("x + y")
    assert divide_exact(a, b) == P("x - y")
    with pytest.raises(ArithmeticError):
        divide_exact(P("x^2 + 1"), P("x + y"))


# -- cyclotomic --------------------------------------------------------

def test_cyclotomic_examples():
    assert cyclotomic(1) == t("t - 1")
    assert cyclotomic(6) == t("t^2 - t + 1")
    assert cyclotomic(4) == t("t^2 + 1")


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_product_identity(n):
    prod = SparsePolynomial.constant(("t",), 1)
    for e in range(1, n + 1):
        if n % e == 0:
            prod = prod * cyclotomic(e)
    assert prod == t(f"t^{n} - 1")
    assert to_sympy(cyclotomic(n)) == sympy.cyclotomic_poly(n, sympy.Symbol("t"))


# -- jets --------------------------------------------------------------

polys_xy = st.dictionaries(
    st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda e: sum(e) <= 6),
    st.fractions(min_value=-4, max_value=4, max_denominator=4),
    max_size=6,
)


@given(polys_xy, polys_xy, st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_jet_product_is_truncated_product(a, b, order):
    pa, pb = SparsePolynomial(XY, a), SparsePolynomial(XY, b)
    direct = Jet.from_polynomial(pa * pb, order)
    assert Jet.from_polynomial(pa, order) * Jet.from_polynomial(pb, order) == direct
    assert all(i + j <= order for (i, j) in direct.coeffs)


# -- polynomial basics -------------------------------------------------

def test_lowest_terms_invariant():
    p = P("6/4*x - 10/15*y")
    for c in p.terms.values():
        assert gcd(abs(c.numerator), c.denominator) == 1 and c.denominator > 0


def test_canonical_printing_roundtrip():
    p = P("y^2*z - x^3", XYZ)
    assert str(p) == "-x^3 + y^2*z"
    assert parse_polynomial(str(p), XYZ) == p
    q = P("1/2*x*y - 3 + (x - y)^2")
    assert parse_polynomial(str(q), XY) == q


# -- number-field gcd --------------------------------------------------

def test_extension_gcd_detects_common_irrational_root():
    # over Q(sqrt 2): f = y - x and g = y^2 - 2 share y = sqrt 2 when x = sqrt 2
    q = [Fraction(-2), Fraction(0), Fraction(1)]
    f = [[Fraction(0), Fraction(-1)], [Fraction(1)]]
    g = [[Fraction(-2)], [], [Fraction(1)]]
    assert gcd_degrees_over_extension(q, [f, g]) == [(q, 1)]
    h = [[Fraction(-3)], [], [Fraction(1)]]
    assert gcd_degrees_over_extension(q, [f, h]) == [(q, 0)]


def test_extension_gcd_splits_reducible_modulus():
    # q = (x^2 - 2)(x^2 - 3); f = y^2 - 2 vanishes at y = x only over the first factor
    q = [Fraction(6), Fraction(0), Fraction(-5), Fraction(0), Fraction(1)]
    f = [[Fraction(0), Fraction(-1)], [Fraction(1)]]
    g = [[Fraction(-2)], [], [Fraction(1)]]
    res = sorted((tuple(m), d) for m, d in gcd_degrees_over_extension(q, [f, g]))
    assert res == [((Fraction(-3), 0, 1), 0), ((Fraction(-2), 0, 1), 1)]
