"""Monodromy of the cone over a projective plane curve.

For f = prod F_j^{m_j} homogeneous of degree d in (x, y, z), the Milnor fibre
f = 1 is a free Z/d cover of the complement U of the curve.  Eigenvalue data
are kept as multiplicity tables over the classes k of G = (Z/d)/B, where class
k stands for the m-th roots of exp(2 pi i k m / d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import univariate as uv
from .exact.elimination import TrivialElimination, are_coprime, is_squarefree, resultant
from .exact.jet import Jet
from .exact.matrix import matrix_rank
from .exact.numberfield import gcd_degrees_over_extension
from .exact.polynomial import SparsePolynomial, monomials_of_degree
from .local import (
    WeightVector,
    colength_manual,
    local_lct,
    local_jumping_numbers,
    local_spectrum_unit_interval,
    multiplier_conditions,
)
from .resolution import (
    CurveGerm,
    ExceptionalData,
    IrrationalInfinitelyNearPoint,
    ManualCluster,
    NonreducedComponent,
    cluster_to_exceptional,
    germ_numerics,
    resolve_germ,
)

PROJECTIVE_VARS = ("x", "y", "z")
LOCAL_VARS = ("u", "v")


class IrrationalSingularPoint(ValueError):
    def __init__(self, witness: Sequence[Fraction], chart: str):
        self.witness = list(witness)
        self.chart = chart
        poly = SparsePolynomial.from_coefficients("t", self.witness)
        super().__init__(f"singular point with irrational coordinates in chart {chart}; witness factor {poly}")


class ReducibleComponent(ValueError):
    """A component whose local data rule out irreducibility."""


class UnsupportedConfiguration(ValueError):
    pass


class InvariantViolation(RuntimeError):
    pass


# -- input and eigenvalue classes ---------------------------------------------------

@dataclass(frozen=True)
class CurveComponent:
    poly: SparsePolynomial
    degree: int
    multiplicity: int = 1
    label: str = ""


@dataclass(frozen=True)
class ProjectiveCurveInput:
    components: tuple[CurveComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("at least one component is required")
        labelled = []
        for j, c in enumerate(comps):
            if c.poly.vars != PROJECTIVE_VARS:
                raise ValueError(f"component {j + 1} must be a polynomial in x, y, z")
            if c.poly.is_zero() or not c.poly.is_homogeneous() or c.poly.total_degree() != c.degree:
                raise ValueError(f"component {j + 1} is not homogeneous of degree {c.degree}")
            if c.degree < 1 or c.multiplicity < 1:
                raise ValueError("degrees and multiplicities must be positive")
            if not is_squarefree(c.poly):
                raise NonreducedComponent(f"component {j + 1} has a repeated factor; use the multiplicity field")
            labelled.append(c if c.label else CurveComponent(c.poly, c.degree, c.multiplicity, f"C{j + 1}"))
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if not are_coprime(comps[i].poly, comps[j].poly):
                    raise ValueError(f"components {i + 1} and {j + 1} share a factor")
        object.__setattr__(self, "components", tuple(labelled))

    @classmethod
    def from_polys(cls, *items) -> ProjectiveCurveInput:
        """Items are polynomials or (polynomial, multiplicity) pairs."""
        comps = []
        for it in items:
            p, m = (it, 1) if isinstance(it, SparsePolynomial) else it
            comps.append(CurveComponent(p, p.total_degree(), m))
        return cls(tuple(comps))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def d(self) -> int:
        return sum(c.degree * c.multiplicity for c in self.components)

    @property
    def m(self) -> int:
        return math.gcd(*(c.multiplicity for c in self.components))

    @property
    def reduced(self) -> bool:
        return all(c.multiplicity == 1 for c in self.components)

    def reduced_equation(self) -> SparsePolynomial:
        out = SparsePolynomial.constant(PROJECTIVE_VARS, 1)
        for c in self.components:
            out = out * c.poly
        return out


@dataclass(frozen=True)
class EigenvalueClasses:
    d: int
    m: int
    B: tuple[int, ...]
    representatives: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.d // self.m

    def reduce(self, k: int) -> int:
        return k % self.order

    def conjugate(self, k: int) -> int:
        return (-k) % self.order


def eigenvalue_classes(inp: ProjectiveCurveInput) -> EigenvalueClasses:
    d, m = inp.d, inp.m
    B = tuple(k for k in range(d) if all((k * c.multiplicity) % d == 0 for c in inp.components))
    if B != tuple(range(0, d, d // m)) or len(B) != m:
        raise InvariantViolation(f"eigenvalue subgroup {B} is not generated by d/m")
    return EigenvalueClasses(d, m, B, tuple(range(d // m)))


def class_weights(inp: ProjectiveCurveInput, k: int) -> tuple[Fraction, ...]:
    """Fractional parts {k m_j / d}."""
    d = inp.d
    return tuple(Fraction((k * c.multiplicity) % d, d) for c in inp.components)


def twist_degree(inp: ProjectiveCurveInput, k: int) -> int:
    ws = class_weights(inp, k)
    e = sum(w * c.degree for w, c in zip(ws, inp.components))
    alt = k - sum((k * c.multiplicity) // inp.d * c.degree for c in inp.components)
    if e.denominator != 1 or e != alt:
        raise InvariantViolation(f"twist degree for class {k} is not the expected integer")
    return int(e)


# -- singular locus ---------------------------------------------------------------

@dataclass(frozen=True)
class SingularPoint:
    coords: tuple[Fraction, Fraction, Fraction]
    chart: int  # index of the coordinate set to 1
    components: tuple[int, ...]  # input components through the point
    E: ExceptionalData
    germ: CurveGerm | None = None

    def local_multiplicities(self, inp: ProjectiveCurveInput) -> list[int]:
        return [inp.components[j].multiplicity for j in self.components]

    def label(self) -> str:
        return "(" + ":".join(_fmt_q(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class SingularLocus:
    points: tuple[SingularPoint, ...]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def replace_point(self, i: int, E: ExceptionalData) -> SingularLocus:
        pts = list(self.points)
        p = pts[i]
        pts[i] = SingularPoint(p.coords, p.chart, p.components, E, p.germ)
        return SingularLocus(tuple(pts))


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _normalize(point: Sequence[Fraction]) -> tuple[tuple[Fraction, Fraction, Fraction], int]:
    pt = [Fraction(c) for c in point]
    i = next(k for k, c in enumerate(pt) if c)
    return tuple(c / pt[i] for c in pt), i


def _chart_map(coords: Sequence[Fraction], chart: int) -> dict[str, SparsePolynomial]:
    """Images of x, y, z in local coordinates (u, v) centred at the point."""
    one = SparsePolynomial.constant(LOCAL_VARS, 1)
    others = [k for k in range(3) if k != chart]
    images = {PROJECTIVE_VARS[chart]: one}
    for name, k in zip(LOCAL_VARS, others):
        images[PROJECTIVE_VARS[k]] = SparsePolynomial.variable(LOCAL_VARS, name) + coords[k]
    return images


def localize(F: SparsePolynomial, coords: Sequence[Fraction], chart: int) -> SparsePolynomial:
    return F.compose(_chart_map(coords, chart), LOCAL_VARS)


def _x_coeffs(p: SparsePolynomial) -> list[Fraction]:
    """Coefficient list in x of a polynomial in (x, y) free of y."""
    out = [Fraction(0)] * (max(p.degree("x"), 0) + 1)
    for (a, b), c in p.terms.items():
        if b:
            raise ValueError("polynomial still depends on y")
        out[a] = c
    return uv.trim(out)


def _y_coeffs_at(p: SparsePolynomial, x0: Fraction) -> list[Fraction]:
    out: dict[int, Fraction] = {}
    for (a, b), c in p.terms.items():
        out[b] = out.get(b, Fraction(0)) + c * x0**a
    deg = max(out, default=0)
    return uv.trim([out.get(b, Fraction(0)) for b in range(deg + 1)])


def _y_poly_over_x(p: SparsePolynomial) -> list[list[Fraction]]:
    parts = p.coefficients_in("y")
    deg = max(parts, default=0)
    return [_x_coeffs(parts[k]) if k in parts else [] for k in range(deg + 1)]


def _gcd_all(polys: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    g: list[Fraction] = []
    for p in polys:
        g = uv.poly_gcd(g, p) if g else uv.trim(p)
    return uv.monic(g) if g else []


def _affine_singular_points(f: SparsePolynomial) -> list[tuple[Fraction, Fraction]]:
    """Rational singular points of f(x, y) = 0, certifying that no irrational ones exist."""
    fx, fy = f.diff("x"), f.diff("y")
    if f.degree("y") < 1:
        return []  # a reduced polynomial in x alone has no singular points
    elims = []
    lam = 0
    for _ in range(64):
        D = fx + fy.scale(lam)
        lam = -lam if lam > 0 else 1 - lam
        if D.is_zero():
            continue
        try:
            R = resultant(f, D, "y")
        except TrivialElimination:
            R = D
        if not R.is_zero():
            elims.append(_x_coeffs(R))
        if len(elims) == 2:
            break
    if len(elims) < 2:
        raise InvariantViolation("could not build two independent elimination polynomials")
    E = _gcd_all(elims)
    if len(E) <= 1:
        return []
    found, rest = uv.strip_rational_roots(E)
    points = []
    partials = [p for p in (f, fx, fy) if not p.is_zero()]
    for x0, _ in found:
        g = _gcd_all([q for q in (_y_coeffs_at(p, x0) for p in partials) if q])
        if not g:
            raise InvariantViolation("a whole vertical line is singular")
        ys, yrest = uv.strip_rational_roots(g) if len(g) > 1 else ([], [Fraction(1)])
        if len(yrest) > 1:
            raise IrrationalSingularPoint(yrest, "z=1")
        points += [(x0, y0) for y0, _ in ys]
    rest = uv.squarefree_part(rest)
    if len(rest) > 1:
        for factor, deg in gcd_degrees_over_extension(rest, [_y_poly_over_x(p) for p in partials]):
            if deg > 0:
                raise IrrationalSingularPoint(factor, "z=1")
    return points


def _line_at_infinity_points(F: SparsePolynomial) -> list[Fraction]:
    """x-coordinates of singular points (x : 1 : 0)."""
    two = ("x", "z")
    Y1 = {"x": SparsePolynomial.variable(two, "x"), "y": SparsePolynomial.constant(two, 1), "z": SparsePolynomial.variable(two, "z")}
    g = F.compose(Y1, two)
    polys = []
    for p in (g, g.diff("x"), g.diff("z")):
        restricted = p.evaluate({"z": 0})
        coeffs = [Fraction(0)] * (max(restricted.degree("x"), 0) + 1)
        for (a, _), c in restricted.terms.items():
            coeffs[a] = c
        if uv.trim(coeffs):
            polys.append(coeffs)
    G = _gcd_all(polys)
    if not G:
        raise InvariantViolation("the line z = 0 is singular")
    if len(G) <= 1:
        return []
    found, rest = uv.strip_rational_roots(G)
    if len(rest) > 1:
        raise IrrationalSingularPoint(rest, "y=1,z=0")
    return [r for r, _ in found]


def singular_points_of(F: SparsePolynomial) -> list[tuple[Fraction, Fraction, Fraction]]:
    pts = []
    Z1 = {"x": SparsePolynomial.variable(("x", "y"), "x"), "y": SparsePolynomial.variable(("x", "y"), "y"),
          "z": SparsePolynomial.constant(("x", "y"), 1)}
    for x0, y0 in _affine_singular_points(F.compose(Z1, ("x", "y"))):
        pts.append(_normalize((x0, y0, Fraction(1)))[0])
    for x0 in _line_at_infinity_points(F):
        pts.append(_normalize((x0, Fraction(1), Fraction(0)))[0])
    e1 = (Fraction(1), Fraction(0), Fraction(0))
    if F.value(e1) == 0 and all(F.diff(v).value(e1) == 0 for v in PROJECTIVE_VARS):
        pts.append(e1)
    return sorted(set(pts), key=_point_order)


def _point_order(p):
    # chart z first, then y, then x, lexicographic inside
    return (tuple(c == 0 for c in p), p)


def find_singular_points(
    inp: ProjectiveCurveInput,
    overrides: Mapping[tuple[Fraction, Fraction, Fraction], ManualCluster] | None = None,
) -> SingularLocus:
    """Rational singular points of the reduced curve with a resolution of each local germ.

    ``overrides`` supplies clusters for points whose infinitely near points are irrational.
    """
    overrides = {_normalize(k)[0]: v for k, v in (overrides or {}).items()}
    out = []
    for coords in singular_points_of(inp.reduced_equation()):
        coords, chart = _normalize(coords)
        through = tuple(j for j, c in enumerate(inp.components) if c.poly.value(coords) == 0)
        germ = CurveGerm(tuple((localize(inp.components[j].poly, coords, chart), inp.components[j].label) for j in through))
        try:
            E = resolve_germ(germ)
        except IrrationalInfinitelyNearPoint:
            if coords not in overrides:
                raise
            cluster = overrides.pop(coords)
            if len(cluster.labels) != len(through):
                raise ValueError(f"override at {coords} must list {len(through)} components")
            E = cluster_to_exceptional(cluster)
            germ = None
        out.append(SingularPoint(coords, chart, through, E, germ))
    if overrides:
        raise ValueError(f"overrides given for points that need none: {sorted(overrides)}")
    return SingularLocus(tuple(out))


# -- deficiencies ---------------------------------------------------------------------

def _local_weights(inp: ProjectiveCurveInput, p: SingularPoint, k: int) -> WeightVector:
    ws = class_weights(inp, k)
    return WeightVector(tuple(ws[j] for j in p.components))


def local_colength(inp: ProjectiveCurveInput, p: SingularPoint, k: int) -> int:
    w = _local_weights(inp, p, k)
    if p.E.automatic:
        return multiplier_conditions(p.E, w).colength
    return colength_manual(p.E, w)


def _check_class(inp: ProjectiveCurveInput, classes: EigenvalueClasses, k: int) -> None:
    if k in classes.B or not 0 < k < inp.d:
        raise ValueError(f"k = {k} must lie in 1..d-1 outside B")
    rep = classes.reduce(k)
    if class_weights(inp, k) != class_weights(inp, rep):
        raise InvariantViolation(f"weights of k = {k} differ from its class representative")


def evaluation_rank(inp: ProjectiveCurveInput, locus: SingularLocus, k: int) -> int:
    """Rank of the point conditions on forms of degree e_k - 3."""
    deg = twist_degree(inp, k) - 3
    if deg < 0:
        return 0
    monos = monomials_of_degree(3, deg)
    rows = []
    for p in locus:
        if not p.E.automatic:
            raise UnsupportedConfiguration(f"point {p.label()} has no chart data; the deficiency needs jet conditions")
        scheme = multiplier_conditions(p.E, _local_weights(inp, p, k))
        if not scheme.functionals:
            continue
        vecs = []
        for e in monos:
            local = localize(SparsePolynomial.monomial(PROJECTIVE_VARS, e), p.coords, p.chart)
            vecs.append(Jet.from_polynomial(local, scheme.order).vector())
        for fn in scheme.functionals:
            rows.append([sum(a * b for a, b in zip(fn, v)) for v in vecs])
    return matrix_rank(rows) if rows else 0


def ell(inp: ProjectiveCurveInput, locus: SingularLocus, k: int, classes: EigenvalueClasses | None = None) -> int:
    classes = classes or eigenvalue_classes(inp)
    _check_class(inp, classes, k)
    for p in locus:
        if not p.E.automatic:
            raise UnsupportedConfiguration(f"point {p.label()} was supplied as a manual cluster")
    total = sum(local_colength(inp, p, k) for p in locus)
    return total - evaluation_rank(inp, locus, k)


def interpolation_deficiency(points_conditions: Sequence[tuple[Sequence[Fraction], int]], degree: int) -> tuple[int, int]:
    """(rank, deficiency) of imposing vanishing to the given order at projective points on forms of ``degree``.

    ``points_conditions`` pairs a point with an order c: the local condition is
    m_p^c, whose colength is c(c+1)/2.
    """
    monos = monomials_of_degree(3, degree) if degree >= 0 else []
    rows, colen = [], 0
    for pt, c in points_conditions:
        coords, chart = _normalize(pt)
        colen += c * (c + 1) // 2
        for a in range(c):
            for b in range(c - a):
                rows.append([
                    localize(SparsePolynomial.monomial(PROJECTIVE_VARS, mono), coords, chart).coefficient((a, b))
                    for mono in monos
                ])
    rank = matrix_rank(rows) if rows and monos else 0
    return rank, colen - rank


# -- characteristic polynomials --------------------------------------------------------

@dataclass(frozen=True)
class CharPolyTable:
    d: int
    m: int
    multiplicities: tuple[tuple[int, int], ...]  # (class k, h^(k)), omitted when zero

    @classmethod
    def from_dict(cls, d: int, m: int, h: Mapping[int, int]) -> CharPolyTable:
        for k, v in h.items():
            if v < 0:
                raise InvariantViolation(f"negative multiplicity {v} at class {k}")
        return cls(d, m, tuple(sorted((k, v) for k, v in h.items() if v)))

    def h(self, k: int) -> int:
        return dict(self.multiplicities).get(k, 0)

    @property
    def order(self) -> int:
        return self.d // self.m

    @property
    def degree(self) -> int:
        return self.m * sum(v for _, v in self.multiplicities)

    def galois_stable(self) -> bool:
        seen: dict[int, int] = {}
        for k in range(self.order):
            g = math.gcd(k, self.order)
            if seen.setdefault(g, self.h(k)) != self.h(k):
                return False
        return True

    def cyclotomic_exponents(self) -> dict[int, int]:
        """a_e with the polynomial equal to prod_e Phi_e(t^m)^(a_e)."""
        if not self.galois_stable():
            raise InvariantViolation("multiplicities are not constant on Galois orbits")
        n = self.order
        return {n // math.gcd(k, n): self.h(k) for k in range(n) if self.h(k)}

    def expansion(self, var: str = "t") -> SparsePolynomial:
        out = [Fraction(1)]
        for e, a in sorted(self.cyclotomic_exponents().items()):
            phi = uv.cyclotomic_coeffs(e)
            stretched = [Fraction(0)] * ((len(phi) - 1) * self.m + 1)
            for i, c in enumerate(phi):
                stretched[i * self.m] = Fraction(c)
            for _ in range(a):
                out = uv.mul(out, stretched)
        return SparsePolynomial.from_coefficients(var, out)

    def factored(self, var: str = "t") -> str:
        parts = []
        tm = var if self.m == 1 else f"{var}^{self.m}"
        for e, a in sorted(self.cyclotomic_exponents().items()):
            base = f"Phi_{e}({tm})"
            parts.append(base if a == 1 else f"{base}^{a}")
        return " * ".join(parts) or "1"


def char_poly_0(classes: EigenvalueClasses) -> CharPolyTable:
    return CharPolyTable.from_dict(classes.d, classes.m, {0: 1})


def all_ells(inp: ProjectiveCurveInput, locus: SingularLocus, classes: EigenvalueClasses) -> dict[int, int]:
    return {k: ell(inp, locus, k, classes) for k in classes.representatives if k}


def char_poly_1(inp: ProjectiveCurveInput, locus: SingularLocus, classes: EigenvalueClasses,
                ells: Mapping[int, int] | None = None) -> CharPolyTable:
    ells = dict(ells) if ells is not None else all_ells(inp, locus, classes)
    h = {0: inp.r - 1}
    for k in classes.representatives:
        if k:
            h[k] = ells[k] + ells[classes.conjugate(k)]
    table = CharPolyTable.from_dict(classes.d, classes.m, h)
    if not table.galois_stable():
        raise InvariantViolation(f"first characteristic polynomial is not Galois stable: {dict(table.multiplicities)}")
    return table


def euler_char_complement(inp: ProjectiveCurveInput, locus: SingularLocus) -> int:
    deltas = [0] * inp.r
    branch_excess = 0
    for p in locus:
        num = germ_numerics(p.E)
        for local_j, j in enumerate(p.components):
            deltas[j] += num.delta_per_component[local_j]
        branch_excess += num.branches - 1
    chi_curve = 0
    for c, dl in zip(inp.components, deltas):
        g = (c.degree - 1) * (c.degree - 2) // 2 - dl
        if g < 0:
            raise ReducibleComponent(f"component {c.label} has negative geometric genus, so it is reducible; "
                                     "list its factors as separate components")
        chi_curve += 2 - 2 * g
    return 3 - (chi_curve - branch_excess)


@dataclass(frozen=True)
class ZetaFunction:
    d: int
    m: int
    chi: int

    @property
    def exponent(self) -> int:
        """zeta = (1 - t^d)^exponent."""
        return -self.chi

    def class_exponents(self) -> dict[int, int]:
        """Exponent of (1 - exp(2 pi i k m / d) t^m) for every class k."""
        return {k: self.exponent for k in range(self.d // self.m)}

    def factored(self, var: str = "t") -> str:
        if self.exponent == 0:
            return "1"
        base = f"(1 - {var}^{self.d})" if self.d > 1 else f"(1 - {var})"
        return base if self.exponent == 1 else f"{base}^({self.exponent})"


def zeta_function(inp: ProjectiveCurveInput, locus: SingularLocus) -> ZetaFunction:
    return ZetaFunction(inp.d, inp.m, euler_char_complement(inp, locus))


def char_poly_2(inp: ProjectiveCurveInput, locus: SingularLocus, classes: EigenvalueClasses,
                delta1: CharPolyTable | None = None, zeta: ZetaFunction | None = None) -> CharPolyTable:
    delta1 = delta1 or char_poly_1(inp, locus, classes)
    zeta = zeta or zeta_function(inp, locus)
    delta0 = char_poly_0(classes)
    z = zeta.class_exponents()
    h = {}
    for k in classes.representatives:
        h[k] = delta1.h(k) - z[k] - delta0.h(k)
        if h[k] < 0:
            raise InvariantViolation(f"second cohomology multiplicity {h[k]} < 0 at class {k}")
    table = CharPolyTable.from_dict(classes.d, classes.m, h)
    if not table.galois_stable():
        raise InvariantViolation(f"second characteristic polynomial is not Galois stable: {dict(table.multiplicities)}")
    return table


# -- spectrum -------------------------------------------------------------------------------

def spectrum_top_window(inp: ProjectiveCurveInput, locus: SingularLocus, k: int) -> int:
    """n_{(d-k)/d + 2} at the cone point, as the Euler characteristic of J_k(e_k - 3)."""
    classes = eigenvalue_classes(inp)
    _check_class(inp, classes, k)
    e = twist_degree(inp, k)
    return (e - 1) * (e - 2) // 2 - sum(local_colength(inp, p, k) for p in locus)


@dataclass(frozen=True)
class LocalReport:
    point: str
    lct: Fraction
    jumping_numbers: tuple[tuple[Fraction, int | None], ...]
    spectrum: tuple[tuple[Fraction, int], ...]
    branches: int
    delta: int


@dataclass(frozen=True)
class SpectrumReport:
    d: int
    m: int
    aggregates: tuple[tuple[int, int], ...]  # (k, S_k) for k in G \ {0}
    trivial_class_exponent: int  # 1 + n_1 + n_2
    top_window: tuple[tuple[int, int], ...]
    local: tuple[LocalReport, ...] = field(default=())

    @property
    def sum_integer_spectrum(self) -> int:
        return self.trivial_class_exponent - 1


def local_report(inp: ProjectiveCurveInput, p: SingularPoint) -> LocalReport:
    m = p.local_multiplicities(inp)
    num = germ_numerics(p.E)
    return LocalReport(
        p.label(),
        local_lct(p.E, m),
        tuple(local_jumping_numbers(p.E, m)),
        tuple(local_spectrum_unit_interval(p.E, m)),
        num.branches,
        num.delta,
    )


def spectrum_aggregates(inp: ProjectiveCurveInput, locus: SingularLocus, classes: EigenvalueClasses,
                        zeta: ZetaFunction | None = None) -> SpectrumReport:
    zeta = zeta or zeta_function(inp, locus)
    inv = {k: -e for k, e in zeta.class_exponents().items()}  # exponents of zeta^(-1)
    nonzero = [k for k in classes.representatives if k]
    return SpectrumReport(
        classes.d,
        classes.m,
        tuple((k, inv[k]) for k in nonzero),
        inv[0],
        tuple((k, spectrum_top_window(inp, locus, k)) for k in nonzero),
        tuple(local_report(inp, p) for p in locus),
    )


@dataclass(frozen=True)
class CorollaryCheck:
    passed: bool
    first_empty: bool
    mismatches: tuple[tuple[int, int, int], ...]  # (k, h2, aggregate)


def isolated_corollary_check(inp: ProjectiveCurveInput, locus: SingularLocus, delta1: CharPolyTable,
                             delta2: CharPolyTable, spectrum: SpectrumReport) -> CorollaryCheck:
    if not inp.reduced or len(locus):
        raise UnsupportedConfiguration("the corollary applies only to reduced curves with smooth support")
    agg = dict(spectrum.aggregates)
    agg[0] = spectrum.sum_integer_spectrum
    bad = tuple((k, delta2.h(k), agg[k]) for k in sorted(agg) if delta2.h(k) != agg[k])
    empty = not delta1.multiplicities
    return CorollaryCheck(empty and not bad, empty, bad)


# -- whole pipeline ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Analysis:
    input: ProjectiveCurveInput
    classes: EigenvalueClasses
    locus: SingularLocus
    ells: tuple[tuple[int, int], ...] | None
    delta0: CharPolyTable
    delta1: CharPolyTable | None
    delta2: CharPolyTable | None
    chi: int
    zeta: ZetaFunction
    spectrum: SpectrumReport
    corollary: CorollaryCheck | None
    notes: tuple[str, ...] = ()

    def degree_bookkeeping(self) -> bool:
        if self.delta1 is None or self.delta2 is None:
            return True
        return self.delta0.degree - self.delta1.degree + self.delta2.degree == self.input.d * self.chi


def analyze(inp: ProjectiveCurveInput, overrides=None, locus: SingularLocus | None = None) -> Analysis:
    classes = eigenvalue_classes(inp)
    locus = locus or find_singular_points(inp, overrides)
    zeta = zeta_function(inp, locus)
    notes = []
    try:
        ells = all_ells(inp, locus, classes)
        d1 = char_poly_1(inp, locus, classes, ells)
        d2 = char_poly_2(inp, locus, classes, d1, zeta)
    except UnsupportedConfiguration as exc:
        ells, d1, d2 = None, None, None
        notes.append(str(exc))
    spectral = spectrum_aggregates(inp, locus, classes, zeta)
    cor = None
    if inp.reduced and not len(locus) and d1 is not None:
        cor = isolated_corollary_check(inp, locus, d1, d2, spectral)
    a = Analysis(inp, classes, locus, tuple(sorted(ells.items())) if ells is not None else None,
                 char_poly_0(classes), d1, d2, zeta.chi, zeta, spectral, cor, tuple(notes))
    if not a.degree_bookkeeping():
        raise InvariantViolation("deg D0 - deg D1 + deg D2 differs from d * chi(U)")
    return a
