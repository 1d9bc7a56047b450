"""Newton polyhedra of monomial ideals and their multiplier ideals (n <= 3)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact.matrix import matrix_rank, nullspace

Exponent = tuple[int, ...]


class UndefinedThreshold(ValueError):
    """Raised for the unit ideal, whose log canonical threshold is +infinity."""


def _dominates(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(u, v))


def _minimalize(points: Iterable[Exponent]) -> tuple[Exponent, ...]:
    pts = sorted(set(points))
    keep = [p for p in pts if not any(q != p and _dominates(p, q) for q in pts)]
    return tuple(sorted(keep, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    generators: tuple[Exponent, ...]

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError("ambient dimension must be 1, 2 or 3")
        gens = tuple(tuple(int(a) for a in g) for g in self.generators)
        if not gens:
            raise ValueError("a monomial ideal needs at least one generator")
        for g in gens:
            if len(g) != self.n or any(a < 0 for a in g):
                raise ValueError(f"bad exponent tuple {g}")
        if len(set(gens)) != len(gens) or _minimalize(gens) != tuple(sorted(gens, reverse=True)):
            raise ValueError("generator list is not minimal")
        object.__setattr__(self, "generators", tuple(sorted(gens, reverse=True)))

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
        """Build an ideal from any generating set, discarding redundant monomials."""
        return cls(n, _minimalize(tuple(int(a) for a in g) for g in gens))

    @classmethod
    def unit(cls, n: int) -> MonomialIdeal:
        return cls(n, ((0,) * n,))

    @property
    def is_unit(self) -> bool:
        return self.generators == ((0,) * self.n,)

    def contains(self, v: Sequence[int]) -> bool:
        return any(_dominates(v, g) for g in self.generators)

    def contains_ideal(self, other: MonomialIdeal) -> bool:
        return all(self.contains(g) for g in other.generators)


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int

    def value(self, v: Sequence) -> Fraction:
        return sum((Fraction(a) * b for a, b in zip(self.normal, v)), Fraction(0))


@dataclass(frozen=True)
class NewtonPolyhedron:
    n: int
    facets: tuple[Facet, ...]

    def contains(self, v: Sequence) -> bool:
        return all(f.value(v) >= f.offset for f in self.facets)


def _primitive_nonnegative(vec: Sequence[Fraction]) -> tuple[int, ...] | None:
    if all(c <= 0 for c in vec):
        vec = [-c for c in vec]
    if any(c < 0 for c in vec) or not any(vec):
        return None
    den = math.lcm(*(Fraction(c).denominator for c in vec))
    ints = [int(c * den) for c in vec]
    g = math.gcd(*ints)
    return tuple(i // g for i in ints)


def newton_polyhedron(ideal: MonomialIdeal) -> NewtonPolyhedron:
    """Facets of conv(generators) + R^n_{>=0}, as inequalities <a, v> >= b."""
    n = ideal.n
    gens = ideal.generators
    units = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    directions = [tuple(a - b for a, b in zip(p, q)) for p, q in itertools.combinations(gens, 2)] + units
    found: dict[tuple[int, ...], int] = {}
    for subset in itertools.combinations(directions, n - 1):
        if n > 1 and matrix_rank(list(subset)) < n - 1:
            continue
        kernel = nullspace(list(subset), n) if n > 1 else [[Fraction(1)]]
        if len(kernel) != 1:
            continue
        normal = _primitive_nonnegative(kernel[0])
        if normal is None or normal in found:
            continue
        offset = min(sum(a * g for a, g in zip(normal, p)) for p in gens)
        tight = [p for p in gens if sum(a * g for a, g in zip(normal, p)) == offset]
        span = [tuple(a - b for a, b in zip(p, tight[0])) for p in tight[1:]]
        span += [u for k, u in enumerate(units) if normal[k] == 0]
        if (matrix_rank(span) if span else 0) == n - 1:
            found[normal] = offset
    facets = tuple(Facet(a, b) for a, b in sorted(found.items(), reverse=True))
    return NewtonPolyhedron(n, facets)


def _box(n: int, top: int):
    return itertools.product(range(top + 1), repeat=n)


def _search_top(ideal: MonomialIdeal, alpha: Fraction) -> int:
    big = max(max(g) for g in ideal.generators)
    return math.ceil(alpha * big) + 1


def _minimal_of_upset(pts: set[Exponent]) -> tuple[Exponent, ...]:
    """Minimal elements of a set closed upward inside a box."""
    keep = []
    for p in pts:
        if not any(p[k] > 0 and p[:k] + (p[k] - 1,) + p[k + 1:] in pts for k in range(len(p))):
            keep.append(p)
    return tuple(sorted(keep, reverse=True))


def _ideal_from_predicate(ideal: MonomialIdeal, top: int, member) -> MonomialIdeal:
    pts = {v for v in _box(ideal.n, top) if member(v)}
    if not pts:
        raise AssertionError("search box contains no member; box bound violated")
    return MonomialIdeal(ideal.n, _minimal_of_upset(pts))


def howald_multiplier(ideal: MonomialIdeal, alpha, polyhedron: NewtonPolyhedron | None = None) -> MonomialIdeal:
    """Monomial multiplier ideal J(alpha * I): x^v with v + 1 interior to alpha * Gamma(I)."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    poly = polyhedron or newton_polyhedron(ideal)

    def member(v):
        w = [a + 1 for a in v]
        # facets with zero offset hold strictly because w is positive
        return all(f.value(w) > alpha * f.offset for f in poly.facets)

    return _ideal_from_predicate(ideal, _search_top(ideal, alpha), member)


def monomial_lct(ideal: MonomialIdeal) -> Fraction:
    if ideal.is_unit:
        raise UndefinedThreshold("lct of the unit ideal is +infinity")
    poly = newton_polyhedron(ideal)
    return min(Fraction(sum(f.normal), f.offset) for f in poly.facets if f.offset > 0)


def _threshold(poly: NewtonPolyhedron, v: Sequence[int]) -> Fraction | None:
    """Supremum of alpha with x^v in the multiplier ideal (None when unbounded)."""
    w = [a + 1 for a in v]
    vals = [f.value(w) / f.offset for f in poly.facets if f.offset > 0]
    return min(vals) if vals else None


def monomial_jumping_numbers(ideal: MonomialIdeal, bound) -> list[Fraction]:
    """All jumping numbers alpha <= bound, found by scanning the finite candidate set.

    x^v lies in J(alpha) iff alpha < s(v), and in the left limit at alpha iff
    alpha <= s(v); candidates are the values of s that do not exceed the bound.
    """
    bound = Fraction(bound)
    if ideal.is_unit:
        raise UndefinedThreshold("the unit ideal has no jumping numbers")
    if bound <= 0:
        raise ValueError("bound must be positive")
    poly = newton_polyhedron(ideal)
    top = _search_top(ideal, bound)
    thresholds = {v: _threshold(poly, v) for v in _box(ideal.n, top)}
    cands = sorted({s for s in thresholds.values() if s is not None and s <= bound})
    jumps = []
    for c in cands:
        inside = {v for v, s in thresholds.items() if s is None or s > c}
        closure = {v for v, s in thresholds.items() if s is None or s >= c}
        if _minimal_of_upset(inside) != _minimal_of_upset(closure):
            jumps.append(c)
    return jumps
