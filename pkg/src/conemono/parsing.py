"""Recursive-descent parser for exact polynomial expressions.

Grammar (whitespace ignored, no implicit multiplication)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' natural)?
    base     := rational | variable | '(' expr ')'
    rational := integer ('/' positive-integer)?

A sign is accepted only in front of the first term of an expression so
that canonical output such as ``-x^3 + y^2*z`` parses back.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .exact import SparsePolynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


def _tokenize(s: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:  # only trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(s)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolynomialSyntaxError(f"expected {op!r}", pos)

    def parse(self) -> SparsePolynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> SparsePolynomial:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> SparsePolynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> SparsePolynomial:
        base = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise PolynomialSyntaxError("expected a natural exponent", pos)
            return base ** int(val)
        return base

    def base(self) -> SparsePolynomial:
        kind, val, pos = self.take()
        if kind == "int":
            num = int(val)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "int" or int(v3) == 0:
                    raise PolynomialSyntaxError("expected a positive integer denominator", p3)
                return SparsePolynomial.constant(self.vars, Fraction(num, int(v3)))
            return SparsePolynomial.constant(self.vars, num)
        if kind == "name":
            if val not in self.vars:
                raise PolynomialSyntaxError(f"unknown variable {val!r}", pos)
            return SparsePolynomial.variable(self.vars, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        what = "end of input" if kind == "end" else repr(val)
        raise PolynomialSyntaxError(f"unexpected {what}", pos)


def parse_polynomial(text: str, variables: Sequence[str]) -> SparsePolynomial:
    """Parse ``text`` into an exact polynomial in ``variables``."""
    return _Parser(text, variables).parse()


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (optionally signed) into a Fraction."""
    m = re.fullmatch(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*", str(text))
    if m is None or (m.group(2) is not None and int(m.group(2)) == 0):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
