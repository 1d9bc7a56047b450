"""Local multiplier ideals of plane curve germs and the invariants derived from them.

An ideal of the form {g : val_{E_i}(g) >= c_i for all i} is presented either as
linear conditions on truncated jets (when chart data exist) or through its
cluster of base points, whose colength follows from unloading.

Weights are per local component.  A weight with an integer part n contributes
the factor f_j^n, which does not change any quotient of ideals, so most routines
work with fractional parts only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact.jet import Jet, jet_basis
from .exact.matrix import left_nullspace, matrix_rank, rref
from .exact.polynomial import SparsePolynomial
from .resolution import ExceptionalData, ValuationUnavailable, jet_conditions

Q = Fraction


class WeightOutOfRange(ValueError):
    pass


def floorleft(q) -> int:
    """Exact left limit of floor at q, that is floor((1 - eps) q) for q > 0."""
    q = Fraction(q)
    f = math.floor(q)
    return f - 1 if f == q else f


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(a) for a in self.weights))
        if any(a < 0 for a in self.weights):
            raise WeightOutOfRange("weights must be nonnegative")

    @classmethod
    def uniform(cls, alpha, r: int) -> WeightVector:
        return cls((Fraction(alpha),) * r)

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class ConditionScheme:
    variables: tuple[str, str]
    order: int
    functionals: tuple[tuple[Fraction, ...], ...]
    colength: int
    values: tuple[int, ...] = ()

    def kernel_basis(self) -> list[list[Fraction]]:
        from .exact.matrix import nullspace

        n = len(jet_basis(self.order))
        if not self.functionals:
            return [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
        return nullspace([list(r) for r in self.functionals], n)

    def is_ideal(self) -> bool:
        """Check that the kernel is stable under multiplication by both coordinates."""
        basis = jet_basis(self.order)
        rows = [list(r) for r in self.functionals]
        if not rows:
            return True
        for vec in self.kernel_basis():
            jet = Jet(self.variables, self.order, dict(zip(basis, vec)))
            for e in ((1, 0), (0, 1)):
                moved = (jet * Jet(self.variables, self.order, {e: 1})).vector()
                if any(sum(a * b for a, b in zip(r, moved)) for r in rows):
                    return False
        return True


def _values(E: ExceptionalData, weights: Sequence[Fraction]) -> list[int]:
    if len(weights) != len(E.labels):
        raise ValueError("one weight per local component is required")
    return [math.floor(sum(a * n for a, n in zip(weights, node.N))) - node.k for node in E.nodes]


def _divisibility_functionals(f: SparsePolynomial, order: int) -> list[list[Fraction]]:
    """Functionals on jets of ``order`` whose common kernel is (f) modulo m^(order+1)."""
    basis = jet_basis(order)
    fj = Jet.from_polynomial(f, order)
    cols = []
    for e in basis:
        cols.append((fj * Jet(f.vars, order, {e: 1})).vector())
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(len(basis))]
    return left_nullspace(rows, len(basis))


def scheme_for_values(E: ExceptionalData, values: Sequence[int], divisible_by: Sequence[int] = ()) -> ConditionScheme:
    """Jet presentation of {g : val_{E_i}(g) >= values[i]} (intersected with (f_j) for listed j)."""
    if not E.automatic:
        raise ValuationUnavailable("conditions unavailable for a manual cluster; use the colength-only path")
    names = E.germ.vars
    polys = [E.germ.components[j][0] for j in divisible_by]
    order = max([0, *values, *(p.order() for p in polys)])
    rows: list[list[Fraction]] = []
    for i, c in enumerate(values):
        if c > 0:
            rows += jet_conditions(E, i, c, order)
    for p in polys:
        rows += _divisibility_functionals(p, order)
    if rows:
        reduced, _ = rref(rows)
        rows = [r for r in reduced if any(r)]
    return ConditionScheme(tuple(names), order, tuple(tuple(r) for r in rows), len(rows), tuple(values))


def multiplier_conditions(E: ExceptionalData, alpha: WeightVector) -> ConditionScheme:
    """Jet conditions for J(sum_j alpha_j D_j) at the base point.

    A weight equal to 1 adds divisibility by the component; the ideal is then not
    of finite colength, and the reported colength is the one in jets of the
    scheme's truncation order.
    """
    if len(alpha) != len(E.labels):
        raise ValueError("one weight per local component is required")
    if any(a > 1 for a in alpha.weights):
        raise WeightOutOfRange("condition schemes take weights in [0, 1]")
    divisible = [j for j, a in enumerate(alpha.weights) if a == 1]
    return scheme_for_values(E, _values(E, alpha.weights), divisible)


# -- cluster path ---------------------------------------------------------------

def unload(E: ExceptionalData, values: Sequence[int]) -> list[int]:
    """Enriques unloading: the smallest consistent value system dominating ``values``."""
    n = E.size
    prox = [node.proximate_to for node in E.nodes]
    later = [[p for p in range(n) if i in prox[p]] for i in range(n)]
    c = [max(0, v) for v in values]

    def mults():
        return [c[i] - sum(c[q] for q in prox[i]) for i in range(n)]

    for _ in range(10_000 * (n + 1)):
        e = mults()
        bad = next((i for i in range(n) if e[i] < sum(e[p] for p in later[i])), None)
        if bad is None:
            return c
        excess = sum(e[p] for p in later[bad]) - e[bad]
        c[bad] += -(-excess // (1 + len(later[bad])))
    raise RuntimeError("unloading did not terminate")  # pragma: no cover


def colength_of_values(E: ExceptionalData, values: Sequence[int]) -> int:
    """Colength of the complete ideal {val_{E_i} >= values[i]} via unloading and Hoskin-Deligne."""
    c = unload(E, values)
    n = E.size
    e = [c[i] - sum(c[q] for q in E.nodes[i].proximate_to) for i in range(n)]
    return sum(m * (m + 1) // 2 for m in e)


def colength_manual(E: ExceptionalData, alpha: WeightVector) -> int:
    if len(alpha) != len(E.labels):
        raise ValueError("one weight per local component is required")
    if any(a >= 1 for a in alpha.weights):
        raise WeightOutOfRange("the cluster path takes weights in [0, 1)")
    return colength_of_values(E, _values(E, alpha.weights))


def _colength(E: ExceptionalData, values: Sequence[int]) -> int:
    if E.automatic:
        return scheme_for_values(E, values).colength
    return colength_of_values(E, values)


def colength(E: ExceptionalData, alpha: WeightVector) -> int:
    """Colength of J(alpha D) with whichever presentation the data support (weights < 1)."""
    if any(a >= 1 for a in alpha.weights):
        raise WeightOutOfRange("finite colength needs weights below 1")
    return _colength(E, _values(E, alpha.weights))


# -- thresholds ----------------------------------------------------------------------

def _totals(E: ExceptionalData, m: Sequence[int]) -> list[int]:
    if len(m) != len(E.labels):
        raise ValueError("one multiplicity per local component is required")
    return [sum(mj * n for mj, n in zip(m, node.N)) for node in E.nodes]


def local_lct(E: ExceptionalData, m: Sequence[int] | None = None) -> Fraction:
    m = list(m) if m is not None else [1] * len(E.labels)
    tot = _totals(E, m)
    cands = [Q(node.k + 1, t) for node, t in zip(E.nodes, tot) if t]
    cands += [Q(1, mj) for mj in m if mj]
    if not cands:
        raise ValueError("the divisor is empty")
    return min(cands)


def _candidates(E: ExceptionalData, m: Sequence[int]) -> list[Fraction]:
    """Possible jumping numbers in (0, 1]: s/N_i for exceptional and strict coefficients."""
    out = set()
    for t in _totals(E, m) + [mj for mj in m if mj]:
        out.update(Q(s, t) for s in range(1, t + 1))
    out.add(Q(1))
    return sorted(out)


def _reduced_values(E: ExceptionalData, m: Sequence[int], alpha: Fraction, left: bool) -> list[int]:
    """Values of J(alpha D) (or its left limit) after removing the factors f_j^n_j.

    The integer parts n_j are those of the left limit, so both sides are divided
    by the same monomial in the f_j.
    """
    n = [floorleft(alpha * mj) if mj else 0 for mj in m]
    out = []
    for node, t in zip(E.nodes, _totals(E, m)):
        fl = floorleft(alpha * t) if left else math.floor(alpha * t)
        out.append(fl - node.k - sum(nj * Nj for nj, Nj in zip(n, node.N)))
    return out


def local_jumping_numbers(E: ExceptionalData, m: Sequence[int] | None = None) -> list[tuple[Fraction, int | None]]:
    """Jumping numbers in (0, 1) with the jump in colength.

    The jump is None when the ideal drops into a principal multiple (alpha * m_j an
    integer for some component), where the quotient is infinite dimensional.
    """
    m = list(m) if m is not None else [1] * len(E.labels)
    out = []
    for a in _candidates(E, m):
        if a >= 1:
            continue
        if any((a * mj).denominator == 1 for mj in m if mj):
            out.append((a, None))
            continue
        jump = _colength(E, _reduced_values(E, m, a, False)) - _colength(E, _reduced_values(E, m, a, True))
        if jump:
            out.append((a, jump))
    return out


def _reduced_lowest_terms(alpha) -> tuple[Fraction, int]:
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    return alpha, alpha.denominator


def inner_jumping_chi(E: ExceptionalData, m: Sequence[int] | None, alpha) -> int:
    """Euler characteristic of a line bundle on the union of divisors whose coefficient b divides."""
    m = list(m) if m is not None else [1] * len(E.labels)
    alpha, b = _reduced_lowest_terms(alpha)
    tot = _totals(E, m)
    J = [i for i, t in enumerate(tot) if t and t % b == 0]
    if not J:
        return 0
    coeff = [node.k - floorleft(alpha * t) for node, t in zip(E.nodes, tot)]
    strict = [-floorleft(alpha * mj) if mj else 0 for mj in m]
    total = 0
    for i in J:
        deg = coeff[i] * E.self_intersection(i)
        deg += sum(coeff[u] for u in range(E.size) if u != i and E.adjacent(u, i))
        deg += sum(strict[j] for a, j in E.attachments if a == i)
        total += deg + 1
    inner_edges = sum(1 for (u, v) in E.edges if u in J and v in J)
    return total - inner_edges


def perturbations(E: ExceptionalData, m: Sequence[int], alpha: Fraction) -> tuple[Fraction, Fraction]:
    """Exact (epsilon, delta) with 0 < epsilon << delta << 1 for the mixed quotient.

    delta keeps alpha*N_i + delta*rho_i below the next integer; epsilon keeps
    (alpha - epsilon)*N_i + delta*rho_i above floor(alpha*N_i), and keeps both
    (alpha - epsilon)*N_i and (alpha - epsilon)*m_j at their left floors.
    """
    tot = _totals(E, m)
    gaps = [(math.floor(alpha * t) + 1 - alpha * t) / node.rho for node, t in zip(E.nodes, tot)]
    delta = min(gaps, default=Q(1)) / 2
    bounds = [delta * node.rho / t for node, t in zip(E.nodes, tot) if t]
    bounds += [(alpha * t - math.floor(alpha * t)) / t for t in tot if t and (alpha * t).denominator != 1]
    bounds += [(alpha * mj - floorleft(alpha * mj)) / mj for mj in m if mj]
    eps = min(bounds, default=Q(1)) / 2
    return eps, delta


def inner_jumping_quotient(E: ExceptionalData, m: Sequence[int] | None, alpha) -> int:
    """dim J((alpha - eps) D) / J((alpha - eps) D + delta p) with exact small eps and delta."""
    m = list(m) if m is not None else [1] * len(E.labels)
    alpha, _ = _reduced_lowest_terms(alpha)
    if not E.nodes:
        return 0
    eps, delta = perturbations(E, m, alpha)
    a = alpha - eps
    n = [math.floor(a * mj) for mj in m]
    base, bumped = [], []
    for node, t in zip(E.nodes, _totals(E, m)):
        shift = node.k + sum(nj * Nj for nj, Nj in zip(n, node.N))
        base.append(math.floor(a * t) - shift)
        bumped.append(math.floor(a * t + delta * node.rho) - shift)
    return _colength(E, bumped) - _colength(E, base)


def local_spectrum_unit_interval(E: ExceptionalData, m: Sequence[int] | None = None) -> list[tuple[Fraction, int]]:
    m = list(m) if m is not None else [1] * len(E.labels)
    out = []
    for a in _candidates(E, m):
        n = inner_jumping_chi(E, m, a)
        if n:
            out.append((a, n))
    return out
