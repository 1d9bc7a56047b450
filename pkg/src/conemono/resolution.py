"""Embedded resolution of plane curve germs by point blowups.

Every infinitely near point is addressed by the sequence of chart steps that
leads to it from the base point.  After blowing up a point with local
coordinates (u, v):

* chart ``A(c)`` uses (u, v) = (x1, x1*(y1 + c)); the new exceptional curve is x1 = 0;
* chart ``B`` uses (u, v) = (x1*y1, y1); the new exceptional curve is y1 = 0.

Chart B is only ever used at its origin, so every point of the new exceptional
curve corresponds to exactly one step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import univariate as uv
from .exact.elimination import are_coprime, is_squarefree
from .exact.matrix import rref
from .exact.jet import jet_basis
from .exact.polynomial import SparsePolynomial


class IrrationalInfinitelyNearPoint(ValueError):
    """An infinitely near point that needs blowing up has irrational coordinates."""

    def __init__(self, witness: Sequence[Fraction], node: int):
        self.witness = list(witness)
        self.node = node
        poly = SparsePolynomial.from_coefficients("t", self.witness)
        super().__init__(
            f"infinitely near point on E{node + 1} has irrational coordinate, minimal data {poly}; "
            "supply the cluster manually"
        )


class NonreducedComponent(ValueError):
    pass


class ValuationUnavailable(ValueError):
    """Raised when chart data is needed but the tree came from a manual cluster."""


class ClusterValidationError(ValueError):
    pass


class NotOnExceptionalLocus(ValueError):
    pass


# -- basic types -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class ChartStep:
    kind: str
    c: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("A", "B"):
            raise ValueError("chart kind must be 'A' or 'B'")
        object.__setattr__(self, "c", Fraction(self.c))
        if self.kind == "B" and self.c:
            raise ValueError("chart B carries no translation")

    def sort_key(self):
        return (self.kind == "B", self.c)

    def __str__(self):
        if self.kind == "B":
            return "B"
        c = self.c
        return f"A({c.numerator}{'' if c.denominator == 1 else '/' + str(c.denominator)})"

    def apply(self, g: SparsePolynomial) -> SparsePolynomial:
        """Total transform of g through this chart."""
        u, v = g.vars
        U = SparsePolynomial.variable(g.vars, u)
        V = SparsePolynomial.variable(g.vars, v)
        if self.kind == "A":
            return g.compose({u: U, v: U * (V + self.c)}, g.vars)
        return g.compose({u: U * V, v: V}, g.vars)

    @property
    def exceptional_axis(self) -> int:
        return 0 if self.kind == "A" else 1


BlowupChart = tuple  # tuple[ChartStep, ...] addressing a point


def A(c=0) -> ChartStep:
    return ChartStep("A", Fraction(c))


B = ChartStep("B")


@dataclass(frozen=True)
class CurveGerm:
    """Reduced germ at the origin; ``components`` pairs each polynomial with a label."""

    components: tuple[tuple[SparsePolynomial, object], ...]

    def __post_init__(self):
        comps = tuple((p, lab) for p, lab in self.components)
        if not comps:
            raise ValueError("a germ needs at least one component")
        names = comps[0][0].vars
        for p, _ in comps:
            if len(p.vars) != 2 or p.vars != names:
                raise ValueError("germ components must be bivariate in common variables")
            if p.is_zero() or p.constant_term():
                raise ValueError(f"component {p} does not vanish at the origin")
            if not is_squarefree(p):
                raise NonreducedComponent(f"component {p} is not squarefree")
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if not are_coprime(comps[i][0], comps[j][0]):
                    raise ValueError(f"components {comps[i][1]} and {comps[j][1]} share a factor")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *polys: SparsePolynomial) -> CurveGerm:
        return cls(tuple((p, j) for j, p in enumerate(polys)))

    @property
    def vars(self) -> tuple[str, str]:
        return self.components[0][0].vars

    @property
    def labels(self) -> list:
        return [lab for _, lab in self.components]

    def product(self) -> SparsePolynomial:
        out = SparsePolynomial.constant(self.vars, 1)
        for p, _ in self.components:
            out = out * p
        return out


@dataclass(frozen=True)
class ExceptionalNode:
    mult: tuple[int, ...]  # strict multiplicity of each component at the blown-up point
    N: tuple[int, ...]  # order of each component's pullback along the divisor
    k: int
    rho: int
    proximate_to: tuple[int, ...]
    chart: tuple[ChartStep, ...] | None  # address of the blown-up point

    @property
    def N_total(self) -> int:
        return sum(self.N)


@dataclass(frozen=True)
class ExceptionalData:
    labels: tuple
    nodes: tuple[ExceptionalNode, ...]
    edges: frozenset[tuple[int, int]]
    attachments: tuple[tuple[int, int], ...]  # (node, component index), one per attachment point
    germ: CurveGerm | None = None
    forced: tuple[tuple[ChartStep, ...], ...] = ()
    root_components: tuple[int, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def automatic(self) -> bool:
        return self.germ is not None

    def self_intersection(self, i: int) -> int:
        return -1 - sum(1 for n in self.nodes if i in n.proximate_to)

    def self_intersections(self) -> list[int]:
        return [self.self_intersection(i) for i in range(self.size)]

    def N_totals(self) -> list[int]:
        return [n.N_total for n in self.nodes]

    def ks(self) -> list[int]:
        return [n.k for n in self.nodes]

    def rhos(self) -> list[int]:
        return [n.rho for n in self.nodes]

    def attachment_count(self, i: int, j: int | None = None) -> int:
        return sum(1 for a, c in self.attachments if a == i and (j is None or c == j))

    def proximity_matrix(self) -> list[list[int]]:
        return [[int(q in n.proximate_to) for q in range(self.size)] for n in self.nodes]

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges


# -- point states -------------------------------------------------------------

@dataclass
class _Point:
    address: tuple[ChartStep, ...]
    strict: list[tuple[int, SparsePolynomial]]  # components through the point
    x_div: int | None  # divisor equal to {first coordinate = 0}
    y_div: int | None

    @property
    def divisors(self) -> list[int]:
        return [d for d in (self.x_div, self.y_div) if d is not None]


def _linear_part(g: SparsePolynomial) -> tuple[Fraction, Fraction]:
    return g.coefficient((1, 0)), g.coefficient((0, 1))


def _needs_blowup(p: _Point) -> bool:
    if not p.strict:
        return False
    if len(p.strict) >= 2:
        return True
    g = p.strict[0][1]
    if g.order() >= 2:
        return True
    divs = p.divisors
    if len(divs) == 2:
        return True
    if len(divs) == 1:
        a, b = _linear_part(g)
        return (b == 0) if p.x_div is not None else (a == 0)
    return False


def _strict_after(g: SparsePolynomial, m: int, step: ChartStep) -> SparsePolynomial:
    total = step.apply(g)
    return total.divide_monomial((m, 0) if step.kind == "A" else (0, m))


def _restriction_to_exceptional(g: SparsePolynomial, m: int) -> list[Fraction]:
    """Coefficients in y1 of the strict transform restricted to x1 = 0 (chart A)."""
    cone = g.homogeneous_part(m)
    out = [Fraction(0)] * (m + 1)
    for (a, b), c in cone.terms.items():
        out[b] = c
    return uv.trim(out)


class _Builder:
    def __init__(self, germ: CurveGerm):
        self.germ = germ
        self.r = len(germ.components)
        self.nodes: list[ExceptionalNode] = []
        self.node_at: dict[tuple[ChartStep, ...], int] = {}
        self.edges: set[tuple[int, int]] = set()
        # (node, component, address of the leaf point or None for irrational points)
        self.attach: list[tuple[int, int, tuple | None]] = []

    def root(self) -> _Point:
        return _Point((), [(j, p) for j, (p, _) in enumerate(self.germ.components)], None, None)

    def child(self, p: _Point, node: int, step: ChartStep) -> _Point:
        strict = []
        for j, g in p.strict:
            m = self.nodes[node].mult[j]
            h = _strict_after(g, m, step)
            if not h.constant_term():
                strict.append((j, h))
        if step.kind == "A":
            return _Point(p.address + (step,), strict, node, p.y_div if step.c == 0 else None)
        return _Point(p.address + (step,), strict, p.x_div, node)

    def point_at(self, address: Sequence[ChartStep]) -> _Point:
        p = self.root()
        for step in address:
            if p.address not in self.node_at:
                raise NotOnExceptionalLocus(f"no blown-up point at {_fmt_address(p.address)}")
            p = self.child(p, self.node_at[p.address], step)
        return p

    def blow_up(self, p: _Point) -> None:
        prox = tuple(p.divisors)
        mult = [0] * self.r
        for j, g in p.strict:
            mult[j] = g.order()
        N = tuple(mult[j] + sum(self.nodes[q].N[j] for q in prox) for j in range(self.r))
        k = 1 + sum(self.nodes[q].k for q in prox)
        rho = 1 if not p.address else sum(self.nodes[q].rho for q in prox)
        i = len(self.nodes)
        self.nodes.append(ExceptionalNode(tuple(mult), N, k, rho, prox, p.address))
        self.node_at[p.address] = i
        if len(prox) == 2:
            self.edges.discard((min(prox), max(prox)))
        for q in prox:
            self.edges.add((q, i))
        self._descend(p, i)

    def _descend(self, p: _Point, i: int) -> None:
        mult = self.nodes[i].mult
        roots: set[Fraction] = set()
        residuals: list[tuple[int, list[Fraction]]] = []
        via_b = False
        for j, g in p.strict:
            restr = _restriction_to_exceptional(g, mult[j])
            if len(restr) - 1 < mult[j]:
                via_b = True
            found, rest = uv.strip_rational_roots(restr)
            roots.update(r for r, _ in found)
            if len(rest) > 1:
                residuals.append((j, rest))
        self._irrational_attachments(i, residuals)
        steps = [A(c) for c in sorted(roots)] + ([B] if via_b else [])
        for step in steps:
            q = self.child(p, i, step)
            self.settle(q)

    def _irrational_attachments(self, i: int, residuals: list[tuple[int, list[Fraction]]]) -> None:
        for idx, (j, rest) in enumerate(residuals):
            rep = uv.poly_gcd(rest, uv.derivative(rest))
            if len(rep) > 1:
                raise IrrationalInfinitelyNearPoint(rep, i)
            for _, other in residuals[idx + 1:]:
                common = uv.poly_gcd(rest, other)
                if len(common) > 1:
                    raise IrrationalInfinitelyNearPoint(common, i)
            # each remaining root is a smooth branch meeting E_i transversally
            self.attach.extend((i, j, None) for _ in range(len(rest) - 1))

    def settle(self, q: _Point) -> None:
        if _needs_blowup(q):
            self.blow_up(q)
        elif q.strict:
            (j, _), = q.strict
            self.attach.append((q.divisors[0], j, q.address))

    def force(self, address: tuple[ChartStep, ...]) -> None:
        if address in self.node_at:
            raise NotOnExceptionalLocus(f"point {_fmt_address(address)} is already blown up")
        p = self.point_at(address)
        self.attach = [a for a in self.attach if a[2] != address]
        self.blow_up(p)

    def finish(self, forced) -> ExceptionalData:
        root = self.root()
        return ExceptionalData(
            labels=tuple(self.germ.labels),
            nodes=tuple(self.nodes),
            edges=frozenset(self.edges),
            attachments=tuple(sorted((a, j) for a, j, _ in self.attach)),
            germ=self.germ,
            forced=tuple(forced),
            root_components=tuple(j for j, _ in root.strict),
        )


def _fmt_address(address: Iterable[ChartStep]) -> str:
    return "/".join(str(s) for s in address) or "origin"


def _build(germ: CurveGerm, forced: Sequence[Sequence[ChartStep]]) -> _Builder:
    b = _Builder(germ)
    root = b.root()
    if _needs_blowup(root):
        b.blow_up(root)
    for address in forced:
        b.force(tuple(address))
    return b


def resolve_germ(germ: CurveGerm, forced: Sequence[Sequence[ChartStep]] = ()) -> ExceptionalData:
    """Blow up until the total transform has normal crossings, then apply ``forced`` blowups."""
    forced = tuple(tuple(a) for a in forced)
    return _build(germ, forced).finish(forced)


# -- manual clusters ----------------------------------------------------------

@dataclass(frozen=True)
class ManualCluster:
    proximity: tuple[tuple[int, ...], ...]  # proximity[i][q] = 1 iff point i is proximate to q
    multiplicities: tuple[tuple[int, ...], ...]  # multiplicities[i][j]
    labels: tuple = ()

    def __post_init__(self):
        P = tuple(tuple(int(a) for a in row) for row in self.proximity)
        M = tuple(tuple(int(a) for a in row) for row in self.multiplicities)
        n = len(P)
        if n == 0:
            raise ClusterValidationError("a cluster needs at least one point")
        if len(M) != n or any(len(row) != n for row in P):
            raise ClusterValidationError("proximity must be square and match the multiplicity rows")
        r = len(M[0])
        if r == 0 or any(len(row) != r for row in M):
            raise ClusterValidationError("every point needs one multiplicity per component")
        labels = tuple(self.labels) or tuple(range(r))
        if len(labels) != r:
            raise ClusterValidationError("label count differs from the component count")
        object.__setattr__(self, "proximity", P)
        object.__setattr__(self, "multiplicities", M)
        object.__setattr__(self, "labels", labels)
        self.validate()

    def proximate(self, i: int) -> list[int]:
        return [q for q in range(len(self.proximity)) if self.proximity[i][q]]

    def validate(self) -> None:
        P, M = self.proximity, self.multiplicities
        n = len(P)
        for i in range(n):
            if any(a not in (0, 1) for a in P[i]):
                raise ClusterValidationError("proximity entries must be 0 or 1")
            if any(P[i][q] for q in range(i, n)):
                raise ClusterValidationError("proximity must be strictly lower triangular")
            prox = self.proximate(i)
            if i == 0:
                continue
            if not prox or len(prox) > 2:
                raise ClusterValidationError(f"point {i + 1} must be proximate to one or two points")
            if len(prox) == 2 and not P[prox[1]][prox[0]]:
                raise ClusterValidationError(f"satellite point {i + 1} has non-nested proximity")
        for i in range(n):
            if any(m < 0 for m in M[i]):
                raise ClusterValidationError("multiplicities must be nonnegative")
            for j in range(len(M[0])):
                later = sum(M[p][j] for p in range(n) if P[p][i])
                if M[i][j] < later:
                    raise ClusterValidationError(f"proximity inequality fails at point {i + 1}")


def _adjacency_from_proximity(prox: Sequence[Sequence[int]]) -> frozenset[tuple[int, int]]:
    n = len(prox)
    edges = set()
    for i in range(n):
        for q in prox[i]:
            if not any(q in prox[p] and i in prox[p] for p in range(i + 1, n)):
                edges.add((q, i))
    return frozenset(edges)


def cluster_to_exceptional(c: ManualCluster) -> ExceptionalData:
    n, r = len(c.proximity), len(c.labels)
    nodes: list[ExceptionalNode] = []
    for i in range(n):
        prox = tuple(c.proximate(i))
        N = tuple(c.multiplicities[i][j] + sum(nodes[q].N[j] for q in prox) for j in range(r))
        k = 1 + sum(nodes[q].k for q in prox)
        rho = 1 if i == 0 else sum(nodes[q].rho for q in prox)
        nodes.append(ExceptionalNode(tuple(c.multiplicities[i]), N, k, rho, prox, None))
    if any(sum(node.N) == 0 for node in nodes):
        raise ClusterValidationError("a point of the cluster carries no component")
    attachments = []
    for i in range(n):
        for j in range(r):
            free = c.multiplicities[i][j] - sum(c.multiplicities[p][j] for p in range(n) if c.proximity[p][i])
            attachments += [(i, j)] * free
    return ExceptionalData(
        labels=c.labels,
        nodes=tuple(nodes),
        edges=_adjacency_from_proximity([nd.proximate_to for nd in nodes]),
        attachments=tuple(attachments),
        root_components=tuple(j for j in range(r) if c.multiplicities[0][j] > 0),
    )


def extract_cluster(E: ExceptionalData) -> ManualCluster:
    if not E.nodes:
        raise ClusterValidationError("empty resolution has no cluster")
    return ManualCluster(
        tuple(tuple(row) for row in E.proximity_matrix()),
        tuple(n.mult for n in E.nodes),
        E.labels,
    )


# -- valuations and jets --------------------------------------------------------

def _pullback_to(E: ExceptionalData, i: int, g: SparsePolynomial) -> SparsePolynomial:
    if not E.automatic or E.nodes[i].chart is None:
        raise ValuationUnavailable("valuation evaluation unavailable for a manually supplied cluster")
    for step in E.nodes[i].chart + (A(0),):
        g = step.apply(g)
    return g


def val_on_germ(E: ExceptionalData, i: int, g: SparsePolynomial) -> int:
    """Order of vanishing of the pullback of g along E_i."""
    h = _pullback_to(E, i, g)
    if h.is_zero():
        raise ValueError("the zero function has no finite valuation")
    return min(e[0] for e in h.terms)


def jet_conditions(E: ExceptionalData, i: int, c: int, order: int) -> list[list[Fraction]]:
    """Linear functionals on jets of ``order`` cutting out { g : val_{E_i}(g) >= c }.

    Each functional is a row indexed by ``jet_basis(order)``; rows are reduced.
    """
    if not E.automatic:
        raise ValuationUnavailable("valuation evaluation unavailable for a manually supplied cluster")
    if c <= 0:
        return []
    names = E.germ.vars
    basis = jet_basis(order)
    pulled = [_pullback_to(E, i, SparsePolynomial.monomial(names, e)) for e in basis]
    keys = sorted({e for h in pulled for e in h.terms if e[0] < c})
    rows = [[h.coefficient(e) for h in pulled] for e in keys]
    reduced, _ = rref(rows) if rows else ([], [])
    return [row for row in reduced if any(row)]


# -- refinement ----------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalPoint:
    """The point of E_node reached by ``step`` from the blown-up point of that node."""

    node: int
    step: ChartStep


def refine(E: ExceptionalData, point: ExceptionalPoint | None) -> ExceptionalData:
    """Blow up one more point of the exceptional locus (or the base point of an empty tree)."""
    if not E.automatic:
        raise ValuationUnavailable("refinement needs chart data")
    if point is None:
        if E.nodes:
            raise NotOnExceptionalLocus("the base point is already blown up")
        return resolve_germ(E.germ, E.forced + ((),))
    i = point.node
    if not 0 <= i < E.size:
        raise NotOnExceptionalLocus(f"there is no exceptional curve E{i + 1}")
    b = _build(E.germ, E.forced)
    address = E.nodes[i].chart + (point.step,)
    while address in b.node_at:
        p = b.point_at(address)
        if p.x_div == i:
            address += (B,)
        elif p.y_div == i:
            address += (A(0),)
        else:  # pragma: no cover - every address built here lies on E_i
            raise NotOnExceptionalLocus("lost track of the exceptional curve")
    return resolve_germ(E.germ, E.forced + (address,))


# -- classical numerics -------------------------------------------------------------

@dataclass(frozen=True)
class GermNumerics:
    delta_per_component: tuple[int, ...]
    delta: int
    branches: int
    multiplicity_sequence: tuple[int, ...]


def germ_numerics(E: ExceptionalData) -> GermNumerics:
    r = len(E.labels)
    per = tuple(sum(n.mult[j] * (n.mult[j] - 1) // 2 for n in E.nodes) for j in range(r))
    seq = tuple(sum(n.mult) for n in E.nodes)
    delta = sum(m * (m - 1) // 2 for m in seq)
    branches = len(E.attachments) if E.nodes else len(E.root_components)
    return GermNumerics(per, delta, branches, seq)


def is_normal_crossing(E: ExceptionalData) -> bool:
    """Re-derive every point over the tree and check that the unblown ones are SNC."""
    if not E.automatic:
        raise ValuationUnavailable("needs chart data")
    b = _build(E.germ, E.forced)
    if not b.nodes:
        return not _needs_blowup(b.root())
    for addr, i in b.node_at.items():
        p = b.point_at(addr)
        roots = set()
        for j, g in p.strict:
            restr = _restriction_to_exceptional(g, b.nodes[i].mult[j])
            roots.update(r for r, _ in uv.strip_rational_roots(restr)[0])
        for step in [A(c) for c in sorted(roots)] + [B]:
            q = b.child(p, i, step)
            if q.address not in b.node_at and _needs_blowup(q):
                return False
    return True
