"""Dense univariate helpers over Q.

Polynomials here are plain coefficient lists, lowest degree first.  The
public entry points that take a ``SparsePolynomial`` are ``rational_roots``
and ``cyclotomic``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .polynomial import SparsePolynomial

Coeffs = list[Fraction]


def trim(p: Sequence) -> Coeffs:
    out = [Fraction(c) for c in p]
    while out and not out[-1]:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def add(p: Sequence, q: Sequence) -> Coeffs:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Sequence, q: Sequence) -> Coeffs:
    return add(p, [-c for c in q])


def mul(p: Sequence, q: Sequence) -> Coeffs:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Coeffs, Coeffs]:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    if len(p) < len(q):
        return [], p
    quo = [Fraction(0)] * (len(p) - len(q) + 1)
    rem = list(p)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + len(q) - 1] / lead
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    return trim(quo), trim(rem[: len(q) - 1])


def monic(p: Sequence) -> Coeffs:
    p = trim(p)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def poly_gcd(p: Sequence, q: Sequence) -> Coeffs:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def derivative(p: Sequence) -> Coeffs:
    return trim([Fraction(i) * c for i, c in enumerate(p)][1:])


def squarefree_part(p: Sequence) -> Coeffs:
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = poly_gcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0])


def evaluate(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive_integer(p: Sequence) -> list[int]:
    """Scale to coprime integer coefficients with a positive leading coefficient."""
    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


# -- real root isolation ------------------------------------------------

def _taylor_shift_one(p: list[int]) -> list[int]:
    """Coefficients of p(y + 1)."""
    a = list(p)
    n = len(a)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _sign_variations(p: Sequence[int]) -> int:
    signs = [c > 0 for c in p if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _descartes_01(p: list[int]) -> int:
    """Upper bound (exact when 0 or 1) for the number of roots of p in (0, 1)."""
    return _sign_variations(_taylor_shift_one(list(reversed(p))))


def _halve(p: list[int]) -> list[int]:
    """2^n p(y/2): maps the left half of (0,1) onto (0,1)."""
    n = len(p) - 1
    return [c << (n - i) for i, c in enumerate(p)]


def _positive_rational_roots(s: list[int]) -> list[Fraction]:
    """Rational roots in (0, oo) of a squarefree primitive integer polynomial with s(0) != 0."""
    lead = s[-1]
    bound = 1 + max(abs(Fraction(c, lead)) for c in s[:-1])
    k = 0
    while (1 << k) < bound:
        k += 1
    # roots of s in (0, 2^k) <-> roots of t(y) = s(2^k y) in (0, 1)
    t = [c << (k * i) for i, c in enumerate(s)]
    found: list[Fraction] = []
    stack = [(t, 0, 0)]
    while stack:
        p, c, h = stack.pop()
        scale = Fraction(1 << k, 1 << h)  # x-width of this cell
        left = c * scale
        if p[0] == 0:
            found.append(left)  # exact root on the left endpoint
            p = p[1:]
        v = _descartes_01(p)
        if v == 0:
            continue
        if v == 1 and scale * lead < 1:
            # at most one candidate N/lead strictly inside (left, left + scale)
            lo = left * lead
            n_cand = lo.numerator // lo.denominator + 1
            r = Fraction(n_cand, lead)
            if left < r < left + scale and evaluate(s, r) == 0:
                found.append(r)
            continue
        p1 = _halve(p)
        p2 = _taylor_shift_one(p1)
        stack.append((p2, 2 * c + 1, h + 1))
        stack.append((p1, 2 * c, h + 1))
    return found


def rational_roots_with_multiplicity(p: Sequence) -> list[tuple[Fraction, int]]:
    """All rational roots of a nonzero polynomial, ascending, with multiplicities."""
    p = trim(p)
    if not p:
        raise ValueError("rational_roots needs a nonzero polynomial")
    ints = primitive_integer(p)
    roots: list[Fraction] = []
    zero_mult = 0
    while ints and ints[0] == 0:
        ints = ints[1:]
        zero_mult += 1
    if len(ints) > 1:
        sq = primitive_integer(squarefree_part([Fraction(c) for c in ints]))
        roots += _positive_rational_roots(sq)
        neg = [c if i % 2 == 0 else -c for i, c in enumerate(sq)]
        if neg[-1] < 0:
            neg = [-c for c in neg]
        roots += [-r for r in _positive_rational_roots(neg)]
    out = []
    if zero_mult:
        out.append((Fraction(0), zero_mult))
    rest = [Fraction(c) for c in ints]
    for r in roots:
        m = 0
        while True:
            q, rem = divmod_poly(rest, [-r, Fraction(1)])
            if rem:
                break
            rest = q
            m += 1
        out.append((r, m))
    return sorted(out)


def rational_roots(p: SparsePolynomial) -> list[Fraction]:
    """Rational roots of a univariate polynomial, ascending, repeated by multiplicity."""
    if p.is_zero():
        raise ValueError("rational_roots needs a nonzero polynomial")
    out = []
    for r, m in rational_roots_with_multiplicity(p.univariate_coefficients()):
        out += [r] * m
    return out


def strip_rational_roots(p: Sequence) -> tuple[list[tuple[Fraction, int]], Coeffs]:
    """Split p into its rational roots and the monic cofactor free of rational roots."""
    p = trim(p)
    roots = rational_roots_with_multiplicity(p)
    rest = p
    for r, m in roots:
        for _ in range(m):
            rest = divmod_poly(rest, [-r, Fraction(1)])[0]
    return roots, monic(rest)


# -- cyclotomic polynomials ---------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_coeffs(e: int) -> tuple[int, ...]:
    if e < 1:
        raise ValueError("cyclotomic index must be positive")
    num: Coeffs = [Fraction(-1)] + [Fraction(0)] * (e - 1) + [Fraction(1)]
    for k in range(1, e):
        if e % k == 0:
            num, rem = divmod_poly(num, [Fraction(c) for c in cyclotomic_coeffs(k)])
            assert not rem
    return tuple(int(c) for c in num)


def cyclotomic(e: int, var: str = "t") -> SparsePolynomial:
    """The e-th cyclotomic polynomial, by exact division of t^e - 1."""
    return SparsePolynomial.from_coefficients(var, list(cyclotomic_coeffs(e)))
