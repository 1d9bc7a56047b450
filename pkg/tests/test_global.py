from fractions import Fraction as F

import pytest

from conemono.monodromy import (
    PROJECTIVE_VARS,
    CharPolyTable,
    InvariantViolation,
    IrrationalSingularPoint,
    ProjectiveCurveInput,
    ReducibleComponent,
    UnsupportedConfiguration,
    analyze,
    class_weights,
    eigenvalue_classes,
    ell,
    find_singular_points,
    interpolation_deficiency,
    spectrum_top_window,
    twist_degree,
)
from conemono.parsing import parse_polynomial
from conemono.resolution import IrrationalInfinitelyNearPoint, ManualCluster

X = PROJECTIVE_VARS


def P(s):
    return parse_polynomial(s, X)


def T(s):
    return parse_polynomial(s, ("t",))


def curve(*items):
    return ProjectiveCurveInput.from_polys(*[(P(i[0]), i[1]) if isinstance(i, tuple) else P(i) for i in items])


SEXTIC = "((z - y)*(z - 2*y - 3*x)*(z - 4*x))^2 + (x*z - y^2)^3"

CASES = {
    "cusp_cubic": curve("y^2*z - x^3"),
    "conic": curve("x*z - y^2"),
    "nodal_cubic": curve("y^2*z - x^2*(x + z)"),
    "xyz": curve("x", "y", "z"),
    "x2y": curve(("x", 2), "y"),
    "x2y2z2": curve(("x", 2), ("y", 2), ("z", 2)),
    "fermat3": curve("x^3 + y^3 + z^3"),
    "fermat4": curve("x^4 + y^4 + z^4"),
    "concurrent": curve("x", "y", "x + y"),
    "conic_tangent": curve("x*z - y^2", "x"),
    "quartic_cusps": curve("x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x + y + z)"),
}


@pytest.fixture(scope="module")
def analyses():
    return {k: analyze(v) for k, v in CASES.items()}


# -- input and classes ---------------------------------------------------------------

def test_classes_and_weights():
    inp = CASES["x2y2z2"]
    c = eigenvalue_classes(inp)
    assert (inp.d, inp.m, c.B, c.representatives) == (6, 2, (0, 3), (0, 1, 2))
    assert class_weights(CASES["cusp_cubic"], 1) == (F(1, 3),)
    assert twist_degree(CASES["cusp_cubic"], 1) == 1


def test_input_validation():
    with pytest.raises(ValueError):
        ProjectiveCurveInput.from_polys(P("x + y^2"))
    with pytest.raises(ValueError):
        ProjectiveCurveInput.from_polys(P("x"), P("2*x"))
    with pytest.raises(ValueError):
        ProjectiveCurveInput.from_polys(P("x^2"))  # multiplicity belongs in the multiplicity field


# -- singular locus ------------------------------------------------------------------------

def labels(inp):
    return [p.label() for p in find_singular_points(inp)]


def test_singular_points():
    assert labels(CASES["cusp_cubic"]) == ["(0:0:1)"]
    assert labels(CASES["conic"]) == []
    assert sorted(labels(CASES["xyz"])) == ["(0:0:1)", "(0:1:0)", "(1:0:0)"]
    assert labels(CASES["nodal_cubic"]) == ["(0:0:1)"]
    assert len(labels(curve(SEXTIC))) == 6
    assert len(labels(CASES["quartic_cusps"])) == 3


def test_singular_points_at_infinity():
    assert labels(curve("x^2*z - y^3")) == ["(0:0:1)"]
    assert labels(curve("y^2*x - z^3")) == ["(1:0:0)"]
    assert labels(curve("x^2*y - z^3")) == ["(0:1:0)"]


def test_irrational_singular_point():
    with pytest.raises(IrrationalSingularPoint) as exc:
        analyze(curve("y", "x^2 + y^2 - 2*z^2"))
    assert "t^2 - 2" in str(exc.value)


def test_reducible_component_detected():
    with pytest.raises(ReducibleComponent):
        analyze(curve("x*y*(x + y)"))


# -- examples ---------------------------------------------------------------------------

def test_cusp_cubic(analyses):
    a = analyses["cusp_cubic"]
    assert a.zeta.factored() == "(1 - t^3)^(-1)"
    assert [s for _, s in a.spectrum.aggregates] == [1, 1]
    assert a.delta1.expansion() == T("1")
    loc = a.spectrum.local[0]
    assert (loc.lct, loc.spectrum) == (F(5, 6), ((F(5, 6), 1),))


def test_xyz(analyses):
    a = analyses["xyz"]
    assert a.delta0.expansion() == T("t - 1")
    assert a.delta1.expansion() == T("(t - 1)^2")
    assert a.delta2.expansion() == T("t - 1")
    assert a.chi == 0 and a.zeta.exponent == 0
    assert [s for _, s in a.spectrum.aggregates] == [0, 0]
    assert a.spectrum.trivial_class_exponent == 0


def test_x2y(analyses):
    a = analyses["x2y"]
    assert (a.delta0.expansion(), a.delta1.expansion(), a.delta2.expansion()) == (T("t - 1"), T("t - 1"), T("1"))
    assert a.chi == 0


def test_x2y2z2(analyses):
    a = analyses["x2y2z2"]
    assert a.delta0.expansion() == T("t^2 - 1")
    assert a.delta1.expansion() == T("(t^2 - 1)^2")
    assert a.delta2.expansion() == T("t^2 - 1")


@pytest.mark.parametrize("d", [3, 4, 5])
def test_fermat(d):
    a = analyze(curve(f"x^{d} + y^{d} + z^{d}"))
    assert a.delta1.expansion() == T("1")
    assert a.delta2.degree == (d - 1) ** 3
    assert a.corollary.passed


def test_zariski_sextic():
    inp = curve(SEXTIC)
    a = analyze(inp)
    assert a.delta1.expansion() == T("t^2 - t + 1")
    assert dict(a.ells) == {1: 0, 2: 0, 3: 0, 4: 0, 5: 1}
    assert a.chi == 9


def test_nodal_cubic_and_tangent_conic(analyses):
    assert analyses["nodal_cubic"].delta1.expansion() == T("1")
    assert analyses["nodal_cubic"].chi == 2
    a = analyses["conic_tangent"]
    assert a.delta1.expansion() == T("t - 1")


def test_concurrent_lines_top_window():
    inp = CASES["concurrent"]
    assert spectrum_top_window(inp, find_singular_points(inp), 2) == -1


def test_three_cuspidal_quartic(analyses):
    # cusps only contribute primitive sixth roots of unity, and 6 does not divide 4
    assert analyses["quartic_cusps"].delta1.expansion() == T("1")


# -- properties ------------------------------------------------------------------------

def test_degree_bookkeeping_and_galois(analyses):
    for name, a in analyses.items():
        d = a.input.d
        assert a.delta0.degree - a.delta1.degree + a.delta2.degree == d * a.chi, name
        for t in (a.delta0, a.delta1, a.delta2):
            assert t.galois_stable(), name
            assert all(c.denominator == 1 for c in t.expansion().terms.values()), name


def test_galois_instability_detected():
    t = CharPolyTable.from_dict(6, 1, {1: 1})
    assert not t.galois_stable()
    with pytest.raises(InvariantViolation):
        t.expansion()


# -- interpolation layer ------------------------------------------------------------

def test_six_points_off_a_conic_impose_independent_conditions():
    pts = [(F(0), F(0), F(1)), (F(1), F(0), F(1)), (F(0), F(1), F(1)), (F(1), F(1), F(1)),
           (F(2), F(3), F(1)), (F(5), F(-7), F(1))]
    assert interpolation_deficiency([(p, 1) for p in pts], 2) == (6, 0)


def test_six_points_on_a_conic_fail_by_one():
    pts = [(F(1), F(t), F(t * t)) for t in (-2, -1, 0, 1, 2, 3)]
    assert interpolation_deficiency([(p, 1) for p in pts], 2) == (5, 1)


def test_double_point_conditions():
    # a double point kills every line; constants see the excess as deficiency
    assert interpolation_deficiency([((F(0), F(0), F(1)), 2)], 1) == (3, 0)
    assert interpolation_deficiency([((F(0), F(0), F(1)), 2)], 0) == (1, 2)


# -- manual clusters ----------------------------------------------------------------------

IRR_TANGENTS = "(y^2 - 2*x^2)^2*z + x^5"
IRR_CLUSTER = ManualCluster(
    ((0, 0, 0, 0, 0), (1, 0, 0, 0, 0), (1, 1, 0, 0, 0), (1, 0, 0, 0, 0), (1, 0, 0, 1, 0)),
    ((4,), (1,), (1,), (1,), (1,)),
    ("C1",),
)


def test_manual_cluster_needed_and_used():
    inp = curve(IRR_TANGENTS)
    with pytest.raises(IrrationalInfinitelyNearPoint):
        find_singular_points(inp)
    a = analyze(inp, {(F(0), F(0), F(1)): IRR_CLUSTER})
    assert a.delta1 is None and a.notes
    assert a.chi == 2
    with pytest.raises(UnsupportedConfiguration):
        ell(inp, a.locus, 1)


def test_unused_override_rejected():
    with pytest.raises(ValueError):
        find_singular_points(CASES["cusp_cubic"], {(F(1), F(2), F(1)): IRR_CLUSTER})
