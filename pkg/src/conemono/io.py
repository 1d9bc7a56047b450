"""Job files in, exact reports out.

Rationals travel as strings ("5/6", "-2", "1"), polynomials as canonical
graded-lex text, so that no float ever appears in a report.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from .exact.polynomial import SparsePolynomial
from .monodromy import (
    PROJECTIVE_VARS,
    Analysis,
    CharPolyTable,
    CurveComponent,
    LocalReport,
    ProjectiveCurveInput,
    SingularLocus,
    SingularPoint,
    _normalize,
    class_weights,
    evaluation_rank,
    local_colength,
    localize,
    twist_degree,
)
from .parsing import format_rational, parse_polynomial, parse_rational
from .resolution import CurveGerm, ExceptionalData, ManualCluster, resolve_germ

RATIONAL = r"^-?[0-9]+(/[0-9]+)?$"

JOB_SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["components"],
    "properties": {
        "variables": {
            "type": "array",
            "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z_0-9]*$"},
            "minItems": 3,
            "maxItems": 3,
            "uniqueItems": True,
        },
        "components": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["poly"],
                "properties": {
                    "poly": {"type": "string", "minLength": 1},
                    "multiplicity": {"type": "integer", "minimum": 1},
                    "label": {"type": "string"},
                },
            },
        },
        "singular_points": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["point"],
                "properties": {
                    "point": {"type": "array", "items": {"type": "string", "pattern": RATIONAL}, "minItems": 3, "maxItems": 3},
                    "manual_cluster": {"$ref": "#/definitions/cluster"},
                },
            },
        },
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "local": {"type": "boolean"},
                "deficiencies": {"type": "boolean"},
            },
        },
    },
    "definitions": {
        "cluster": {
            "type": "object",
            "additionalProperties": False,
            "required": ["proximity", "multiplicities"],
            "properties": {
                "components": {"type": "array", "items": {"type": "integer", "minimum": 0}, "uniqueItems": True},
                "proximity": {"type": "array", "items": {"type": "array", "items": {"enum": [0, 1]}}},
                "multiplicities": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
            },
        }
    },
}


class JobError(ValueError):
    """Schema or semantic problem with a job file."""


@dataclass(frozen=True)
class Job:
    variables: tuple[str, str, str]
    input: ProjectiveCurveInput
    overrides: dict
    options: dict


def _cluster_from_json(obj: dict, through: Sequence[int]) -> ManualCluster:
    order = obj.get("components")
    mults = obj["multiplicities"]
    if order is not None:
        if sorted(order) != sorted(through):
            raise JobError(f"cluster components {order} differ from the components through the point {list(through)}")
        perm = [order.index(j) for j in through]
        mults = [[row[p] for p in perm] for row in mults]
        if any(len(row) != len(order) for row in obj["multiplicities"]):
            raise JobError("cluster multiplicity rows must have one entry per listed component")
    return ManualCluster(tuple(map(tuple, obj["proximity"])), tuple(map(tuple, mults)), tuple(through))


def load_job(source: str | dict) -> Job:
    obj = json.loads(source) if isinstance(source, str) else source
    try:
        jsonschema.validate(obj, JOB_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise JobError(f"schema violation at {where}: {exc.message}") from None
    names = tuple(obj.get("variables", PROJECTIVE_VARS))
    comps = []
    for j, c in enumerate(obj["components"]):
        p = parse_polynomial(c["poly"], names).rename(PROJECTIVE_VARS)
        if p.is_zero() or not p.is_homogeneous():
            raise JobError(f"component {j + 1} is not a nonzero homogeneous polynomial")
        comps.append(CurveComponent(p, p.total_degree(), c.get("multiplicity", 1), c.get("label", f"C{j + 1}")))
    inp = ProjectiveCurveInput(tuple(comps))
    overrides = {}
    for entry in obj.get("singular_points", []):
        pt = tuple(parse_rational(s) for s in entry["point"])
        if not any(pt):
            raise JobError("the zero vector is not a projective point")
        if inp.reduced_equation().value(pt) != 0:
            raise JobError(f"declared point {entry['point']} is not on the curve")
        through = [j for j, c in enumerate(inp.components) if c.poly.value(pt) == 0]
        if "manual_cluster" in entry:
            overrides[_normalize(pt)[0]] = _cluster_from_json(entry["manual_cluster"], through)
    return Job(names, inp, overrides, dict(obj.get("options", {})))


# -- point parsing ---------------------------------------------------------------

def parse_point(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = [s for s in re.split(r"[:,\s]+", text.strip().strip("()[]")) if s]
    if len(parts) != 3:
        raise JobError(f"expected a projective point like (0:0:1), got {text!r}")
    pt = tuple(parse_rational(s) for s in parts)
    if not any(pt):
        raise JobError("the zero vector is not a projective point")
    return _normalize(pt)[0]


def germ_at(inp: ProjectiveCurveInput, locus: SingularLocus, point) -> tuple[SingularPoint, bool]:
    """The locus entry at ``point`` or, for a smooth point of the curve, a fresh germ."""
    coords, chart = _normalize(point)
    for p in locus:
        if p.coords == coords:
            return p, True
    through = tuple(j for j, c in enumerate(inp.components) if c.poly.value(coords) == 0)
    if not through:
        raise JobError(f"point {point} is not on the curve")
    germ = CurveGerm(tuple((localize(inp.components[j].poly, coords, chart), inp.components[j].label) for j in through))
    return SingularPoint(coords, chart, through, resolve_germ(germ), germ), False


# -- report encoding ---------------------------------------------------------------

def q(x) -> str:
    return format_rational(Fraction(x))


def table_json(t: CharPolyTable) -> dict:
    return {
        "degree": t.degree,
        "classes": [{"k": k, "h": h} for k, h in t.multiplicities],
        "cyclotomic": [{"e": e, "a": a} for e, a in sorted(t.cyclotomic_exponents().items())],
        "expansion": str(t.expansion()),
    }


def exceptional_json(E: ExceptionalData) -> dict:
    return {
        "mode": "automatic" if E.automatic else "manual",
        "components": [str(lab) for lab in E.labels],
        "nodes": [
            {
                "index": i + 1,
                "N": list(n.N),
                "N_total": n.N_total,
                "k": n.k,
                "self_intersection": E.self_intersection(i),
                "rho": n.rho,
                "multiplicities": list(n.mult),
                "proximate_to": [q_ + 1 for q_ in n.proximate_to],
                "chart": None if n.chart is None else [str(s) for s in n.chart],
                "attachments": [str(E.labels[j]) for a, j in E.attachments if a == i],
            }
            for i, n in enumerate(E.nodes)
        ],
        "edges": [[a + 1, b + 1] for a, b in sorted(E.edges)],
    }


def local_json(rep: LocalReport) -> dict:
    return {
        "point": rep.point,
        "lct": q(rep.lct),
        "jumping_numbers": [{"alpha": q(a), "jump": j} for a, j in rep.jumping_numbers],
        "spectrum": [{"alpha": q(a), "n": n} for a, n in rep.spectrum],
        "branches": rep.branches,
        "delta": rep.delta,
    }


def point_json(inp: ProjectiveCurveInput, p: SingularPoint) -> dict:
    return {
        "point": [q(c) for c in p.coords],
        "label": p.label(),
        "chart": PROJECTIVE_VARS[p.chart],
        "components": [inp.components[j].label for j in p.components],
        "resolution": exceptional_json(p.E),
    }


def input_json(job: Job, a: Analysis) -> dict:
    inp = job.input
    return {
        "variables": list(job.variables),
        "components": [
            {"label": c.label, "poly": str(c.poly.rename(job.variables)), "degree": c.degree, "multiplicity": c.multiplicity}
            for c in inp.components
        ],
        "d": inp.d,
        "m": inp.m,
        "r": inp.r,
        "B": list(a.classes.B),
        "G": list(a.classes.representatives),
    }


def deficiency_rows(inp: ProjectiveCurveInput, a: Analysis) -> list[dict]:
    if a.ells is None:
        return []
    rows = []
    for k, ell in a.ells:
        colen = sum(local_colength(inp, p, k) for p in a.locus)
        rows.append({
            "k": k,
            "weights": [q(w) for w in class_weights(inp, k)],
            "e": twist_degree(inp, k),
            "colength": colen,
            "rank": evaluation_rank(inp, a.locus, k),
            "ell": ell,
        })
    return rows


def spectrum_json(a: Analysis, include_local: bool = True) -> dict:
    s = a.spectrum
    d = s.d
    out = {
        "aggregates": [{"k": k, "S": v} for k, v in s.aggregates],
        "trivial_class_exponent": s.trivial_class_exponent,
        "integer_spectrum_sum": s.sum_integer_spectrum,
        "top_window": [{"k": k, "alpha": q(Fraction(d - k, d) + 2), "n": v} for k, v in s.top_window],
    }
    if include_local:
        out["local"] = [local_json(r) for r in s.local]
    return out


def zeta_json(a: Analysis) -> dict:
    return {"chi_U": a.chi, "exponent": a.zeta.exponent, "factored": a.zeta.factored()}


def analysis_report(job: Job, a: Analysis) -> dict:
    opts = job.options
    rep = {
        "input": input_json(job, a),
        "singular_points": [point_json(job.input, p) for p in a.locus],
        "deficiencies": deficiency_rows(job.input, a) if opts.get("deficiencies", True) else None,
        "charpoly": {
            "0": table_json(a.delta0),
            "1": table_json(a.delta1) if a.delta1 else None,
            "2": table_json(a.delta2) if a.delta2 else None,
        },
        "zeta": zeta_json(a),
        "spectrum": spectrum_json(a, opts.get("local", True)),
        "corollary": None if a.corollary is None else {
            "passed": a.corollary.passed,
            "first_empty": a.corollary.first_empty,
            "mismatches": [{"k": k, "h2": h, "aggregate": s} for k, h, s in a.corollary.mismatches],
        },
        "checks": {"degree_bookkeeping": a.degree_bookkeeping()},
        "notes": list(a.notes),
    }
    return rep


# -- serialization with round trip ------------------------------------------------------

_RAT = re.compile(RATIONAL)
_POLY_KEYS = {"expansion": ("t",)}


def decode(obj, key: str | None = None, variables: Sequence[str] | None = None):
    """Turn report JSON into exact Python values (Fractions, polynomials)."""
    if isinstance(obj, dict):
        names = obj.get("variables", variables)
        return {k: decode(v, k, names) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(v, key, variables) for v in obj]
    if isinstance(obj, str):
        if key in _POLY_KEYS:
            return parse_polynomial(obj, _POLY_KEYS[key])
        if key == "poly" and variables:
            return parse_polynomial(obj, variables)
        if _RAT.match(obj):
            return parse_rational(obj)
    return obj


def _encodable(obj):
    if isinstance(obj, dict):
        return {k: _encodable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encodable(v) for v in obj]
    if isinstance(obj, Fraction):
        return q(obj)
    if isinstance(obj, SparsePolynomial):
        return str(obj)
    return obj


def dumps(report: dict) -> str:
    return json.dumps(_encodable(report), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    return decode(json.loads(text))
