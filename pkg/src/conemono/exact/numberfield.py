"""Polynomial gcds over Q[x]/(q) for squarefree q, by dynamic evaluation.

When a non-invertible element shows up, the modulus is split along the
gcd and the computation restarts on each factor, so q never has to be
factored in advance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import univariate as uv

Elem = list[Fraction]  # element of Q[x]/(q), reduced, low degree first
KPoly = list[Elem]  # polynomial in y over Q[x]/(q), low degree first


class _Split(Exception):
    def __init__(self, a: Sequence, b: Sequence):
        self.a, self.b = uv.monic(a), uv.monic(b)


def _reduce(e: Sequence, q: Sequence) -> Elem:
    return uv.divmod_poly(e, q)[1]


def _inverse(a: Elem, q: Sequence) -> Elem:
    """Inverse of a modulo q, or raise _Split if a is a zero divisor."""
    r0, r1 = uv.trim(q), uv.trim(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        quo, rem = uv.divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, uv.sub(s0, uv.mul(quo, s1))
    # r0 = gcd(q, a) up to a unit, and s0 * a == r0 (mod q)
    if len(r0) > 1:
        g = uv.monic(r0)
        raise _Split(g, uv.divmod_poly(q, g)[0])
    inv = [c / r0[0] for c in s0]
    return _reduce(inv, q)


def _trim_k(p: KPoly) -> KPoly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _rem_k(a: KPoly, b: KPoly, q: Sequence) -> KPoly:
    a, b = _trim_k(a), _trim_k(b)
    inv = _inverse(b[-1], q)
    a = [list(c) for c in a]
    while len(a) >= len(b):
        c = _reduce(uv.mul(a[-1], inv), q)
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = _reduce(uv.sub(a[shift + j], uv.mul(c, bj)), q)
        a = _trim_k(a)
        if not a:
            break
    return a


def _gcd_k(ps: list[KPoly], q: Sequence) -> KPoly:
    g: KPoly = []
    for p in ps:
        a, b = _trim_k(p), g
        if not b:
            g = a
            continue
        while b:
            a, b = b, _rem_k(a, b, q)
        g = a
    return g


def gcd_degrees_over_extension(modulus: Sequence, polys: Sequence[Sequence[Sequence]]) -> list[tuple[list[Fraction], int]]:
    """For squarefree ``modulus`` q(x), split q into coprime factors q_i and return, per
    factor, the y-degree of gcd(polys) over Q[x]/(q_i).

    Each input polynomial is a list (in y, low degree first) of coefficient
    lists in x.  A y-degree of -1 means every input vanishes identically.
    """
    q = uv.monic(modulus)
    tasks = [q]
    done: list[tuple[list[Fraction], int]] = []
    while tasks:
        mod = tasks.pop()
        red = [[_reduce(c, mod) for c in p] for p in polys]
        try:
            g = _gcd_k(red, mod)
        except _Split as s:
            tasks.extend([s.b, s.a])
            continue
        done.append((mod, len(g) - 1))
    return done
