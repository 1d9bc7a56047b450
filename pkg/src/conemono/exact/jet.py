"""Truncated bivariate jets: a finite model of O_p / m^(B+1)."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .polynomial import SparsePolynomial


def jet_basis(order: int) -> list[tuple[int, int]]:
    """Bidegrees (a, b) with a + b <= order, graded, x-heavy first within a degree."""
    return [(d - j, j) for d in range(order + 1) for j in range(d + 1)]


class Jet:
    __slots__ = ("vars", "order", "coeffs")

    def __init__(self, variables: Sequence[str], order: int, coeffs: Mapping[tuple[int, int], object] | None = None):
        if len(variables) != 2:
            raise ValueError("jets are bivariate")
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.vars = tuple(variables)
        self.order = order
        self.coeffs: dict[tuple[int, int], Fraction] = {}
        for (a, b), c in (coeffs or {}).items():
            c = Fraction(c)
            if c and a + b <= order:
                self.coeffs[(a, b)] = c

    @classmethod
    def from_polynomial(cls, p: SparsePolynomial, order: int) -> Jet:
        return cls(p.vars, order, dict(p.terms))

    def to_polynomial(self) -> SparsePolynomial:
        return SparsePolynomial(self.vars, self.coeffs)

    def vector(self) -> list[Fraction]:
        """Coefficients in ``jet_basis(order)`` order."""
        return [self.coeffs.get(e, Fraction(0)) for e in jet_basis(self.order)]

    def _check(self, other: Jet) -> None:
        if self.vars != other.vars or self.order != other.order:
            raise ValueError("jets live in different truncated rings")

    def __add__(self, other: Jet) -> Jet:
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Jet(self.vars, self.order, out)

    def __sub__(self, other: Jet) -> Jet:
        return self + other.scale(-1)

    def scale(self, c) -> Jet:
        c = Fraction(c)
        return Jet(self.vars, self.order, {e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other: Jet) -> Jet:
        self._check(other)
        out: dict[tuple[int, int], Fraction] = {}
        B = self.order
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                if a1 + a2 + b1 + b2 <= B:
                    e = (a1 + a2, b1 + b2)
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Jet(self.vars, B, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Jet) and self.vars == other.vars and self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, {self.to_polynomial()})"
