"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {c!r} as an exact coefficient")


def grlex_key(e: Exponent) -> tuple:
    """Sort key: total degree first, then lexicographic with the first variable largest."""
    return (sum(e), e)


class SparsePolynomial:
    """Polynomial over Q in a fixed, ordered list of variables.

    Terms live in a dict mapping exponent tuples to nonzero ``Fraction``
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = _as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> SparsePolynomial:
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> SparsePolynomial:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> SparsePolynomial:
        i = list(variables).index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Exponent, c=1) -> SparsePolynomial:
        return cls(variables, {tuple(exponent): c})

    @classmethod
    def from_coefficients(cls, var: str, coeffs: Sequence) -> SparsePolynomial:
        """Univariate polynomial from coefficients listed from degree 0 upward."""
        return cls((var,), {(i,): c for i, c in enumerate(coeffs) if c})

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self) -> int:
        """Lowest total degree of a term (the multiplicity at the origin)."""
        if not self.terms:
            raise ValueError("order of the zero polynomial is undefined")
        return min(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        i = self.vars.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, deg: int) -> SparsePolynomial:
        return SparsePolynomial(self.vars, {e: c for e, c in self.terms.items() if sum(e) == deg})

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def sorted_terms(self, descending: bool = True) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=descending)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        return max(self.terms.items(), key=lambda t: grlex_key(t[0]))

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> SparsePolynomial:
        if isinstance(other, SparsePolynomial):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        return SparsePolynomial.constant(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePolynomial(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            c = _as_fraction(other)
            return SparsePolynomial(self.vars, {e: a * c for e, a in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return SparsePolynomial(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SparsePolynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> SparsePolynomial:
        return self * _as_fraction(c)

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == SparsePolynomial.constant(self.vars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and substitution --------------------------------------
    def diff(self, var: str) -> SparsePolynomial:
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return SparsePolynomial(self.vars, out)

    def evaluate(self, values: Mapping[str, object]) -> SparsePolynomial:
        """Substitute rational values for some variables; the variable list is kept."""
        idx = {self.vars.index(v): _as_fraction(x) for v, x in values.items()}
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, x in idx.items():
                c = c * x ** e[i]
                ne[i] = 0
            ne = tuple(ne)
            out[ne] = out.get(ne, Fraction(0)) + c
        return SparsePolynomial(self.vars, out)

    def value(self, point: Sequence) -> Fraction:
        """Evaluate at a full point (one value per variable)."""
        total = Fraction(0)
        pt = [_as_fraction(p) for p in point]
        for e, c in self.terms.items():
            term = c
            for x, a in zip(pt, e):
                if a:
                    term *= x ** a
            total += term
        return total

    def compose(self, images: Mapping[str, SparsePolynomial], new_vars: Sequence[str]) -> SparsePolynomial:
        """Substitute a polynomial (in ``new_vars``) for every variable."""
        new_vars = tuple(new_vars)
        imgs = []
        for v in self.vars:
            p = images[v]
            if not isinstance(p, SparsePolynomial):
                p = SparsePolynomial.constant(new_vars, p)
            if p.vars != new_vars:
                raise ValueError("images must share the new variable list")
            imgs.append(p)
        powers: list[dict[int, SparsePolynomial]] = [{0: SparsePolynomial.constant(new_vars, 1)} for _ in imgs]

        def power(i: int, k: int) -> SparsePolynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * imgs[i]
            return cache[k]

        acc: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            term = SparsePolynomial.constant(new_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term.terms.items():
                acc[te] = acc.get(te, Fraction(0)) + tc
        return SparsePolynomial(new_vars, acc)

    def rename(self, new_vars: Sequence[str]) -> SparsePolynomial:
        if len(new_vars) != len(self.vars):
            raise ValueError("rename needs the same number of variables")
        return SparsePolynomial(new_vars, self.terms)

    def embed(self, new_vars: Sequence[str]) -> SparsePolynomial:
        """View the polynomial inside a larger (or reordered) variable list."""
        new_vars = tuple(new_vars)
        pos = [new_vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, a in zip(pos, e):
                ne[i] = a
            out[tuple(ne)] = c
        return SparsePolynomial(new_vars, out)

    def drop_variable(self, var: str) -> SparsePolynomial:
        """Remove a variable that does not occur."""
        i = self.vars.index(var)
        if any(e[i] for e in self.terms):
            raise ValueError(f"{var} occurs in the polynomial")
        nv = self.vars[:i] + self.vars[i + 1:]
        return SparsePolynomial(nv, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def coefficients_in(self, var: str) -> dict[int, SparsePolynomial]:
        """Split as sum_k c_k * var^k; each c_k keeps the full variable list."""
        i = self.vars.index(var)
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            parts.setdefault(e[i], {})[tuple(ne)] = c
        return {k: SparsePolynomial(self.vars, t) for k, t in parts.items()}

    def univariate_coefficients(self) -> list[Fraction]:
        """Coefficient list (degree 0 upward) of a polynomial in one variable."""
        if len(self.vars) != 1:
            raise ValueError("not a univariate polynomial")
        deg = self.degree(self.vars[0])
        out = [Fraction(0)] * (deg + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def divide_monomial(self, exponent: Exponent) -> SparsePolynomial:
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, exponent))
            if min(ne) < 0:
                raise ValueError("monomial does not divide the polynomial")
            out[ne] = c
        return SparsePolynomial(self.vars, out)

    def content_denominator_lcm(self) -> int:
        from math import lcm

        return lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1

    # -- printing -------------------------------------------------------
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.vars!r}, {format_polynomial(self)!r})"


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: SparsePolynomial) -> str:
    """Canonical text in descending graded-lex order, e.g. ``-x^3 + y^2*z``."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms(descending=True):
        mono = "*".join(
            v if a == 1 else f"{v}^{a}" for v, a in zip(p.vars, e) if a
        )
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{_format_coefficient(mag)}*{mono}"
        else:
            body = _format_coefficient(mag)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def divide_exact(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    """Exact quotient p / q; raises ``ArithmeticError`` if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    qe, qc = q.leading_term()
    quotient: dict[Exponent, Fraction] = {}
    rem = p
    while not rem.is_zero():
        re, rc = rem.leading_term()
        diff = tuple(a - b for a, b in zip(re, qe))
        if min(diff) < 0:
            raise ArithmeticError("inexact polynomial division")
        c = rc / qc
        quotient[diff] = quotient.get(diff, Fraction(0)) + c
        rem = rem - q * SparsePolynomial.monomial(p.vars, diff, c)
    return SparsePolynomial(p.vars, quotient)


def monomials_of_degree(nvars: int, deg: int) -> list[Exponent]:
    """All exponent tuples of the given total degree in descending lex order."""
    if deg < 0:
        return []
    if nvars == 1:
        return [(deg,)]
    out = []
    for a in range(deg, -1, -1):
        for rest in monomials_of_degree(nvars - 1, deg - a):
            out.append((a,) + rest)
    return out


def product(polys: Iterable[SparsePolynomial], variables: Sequence[str]) -> SparsePolynomial:
    acc = SparsePolynomial.constant(variables, 1)
    for p in polys:
        acc = acc * p
    return acc
