"""Command line front end: ``conemono <command> [job.json] [--json]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import io
from .monodromy import (
    PROJECTIVE_VARS,
    InvariantViolation,
    IrrationalSingularPoint,
    UnsupportedConfiguration,
    analyze,
    find_singular_points,
    local_report,
)
from .newton import MonomialIdeal, howald_multiplier, monomial_jumping_numbers, monomial_lct, newton_polyhedron
from .parsing import parse_polynomial, parse_rational
from .resolution import IrrationalInfinitelyNearPoint, germ_numerics

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_INVARIANT = 0, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass
class RunResult:
    code: int
    stdout: str
    stderr: str


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> list[str]:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    fmt = lambda r: "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()
    return [fmt(cells[0]), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells[1:]]


def _build_parser() -> _Parser:
    p = _Parser(prog="conemono", description="Exact monodromy invariants of cyclic covers branched along plane curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def job_cmd(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("job", help="path to a JSON job file, or - for stdin")
        s.add_argument("--json", action="store_true", help="machine-readable output")
        return s

    job_cmd("analyze", "run every task")
    job_cmd("charpoly", "characteristic polynomial of monodromy").add_argument(
        "--level", type=int, choices=(0, 1, 2), required=True)
    job_cmd("zeta", "monodromy zeta function")
    job_cmd("spectrum", "spectrum aggregates and top window")
    job_cmd("local", "local invariants at a point").add_argument("--point", required=True, help="e.g. (0:0:1)")
    job_cmd("resolve", "embedded resolution at a point").add_argument("--point", required=True)

    h = sub.add_parser("howald", help="multiplier ideals of monomial ideals")
    h.add_argument("--generators", required=True, help="comma separated monomials, e.g. x^2,y^3")
    h.add_argument("--variables", help="comma separated variable names (default: x,y,z as needed)")
    h.add_argument("--alpha", help="compute the multiplier ideal at this rational")
    h.add_argument("--lct", action="store_true", help="print the log canonical threshold")
    h.add_argument("--jumps", metavar="BOUND", help="jumping numbers in (0, BOUND]")
    h.add_argument("--json", action="store_true")
    return p


def _read_job(path: str) -> io.Job:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    try:
        return io.load_job(text)
    except json.JSONDecodeError as exc:
        raise io.JobError(f"invalid JSON: {exc}") from None


# -- commands ------------------------------------------------------------------------

def _cmd_analyze(args, job):
    a = analyze(job.input, job.overrides)
    rep = io.analysis_report(job, a)
    lines = _human_summary(rep)
    for lvl in "012":
        t = rep["charpoly"][lvl]
        lines.append(f"Delta_{lvl}(t) = {t['expansion'] if t else 'unavailable'}")
    lines.append(f"chi(U) = {a.chi}   zeta(t) = {a.zeta.factored()}")
    lines.extend(_human_spectrum(rep["spectrum"]))
    if a.notes:
        lines.extend(f"note: {n}" for n in a.notes)
    failure = None
    if a.delta1 is None:
        failure = UnsupportedConfiguration(a.notes[0] if a.notes else "deficiencies unavailable")
    return rep, lines, failure


def _human_summary(rep):
    i = rep["input"]
    lines = [f"d = {i['d']}  m = {i['m']}  r = {i['r']}  B = {i['B']}  G = {i['G']}"]
    if rep.get("singular_points"):
        lines.append("")
        lines.extend(_table(["point", "components", "mode", "nodes"],
                            [(p["label"], ",".join(p["components"]), p["resolution"]["mode"],
                              len(p["resolution"]["nodes"])) for p in rep["singular_points"]]))
    lines.append("")
    return lines


def _human_spectrum(s):
    lines = ["", "spectrum aggregates"]
    lines.extend(_table(["k", "S_k", "top window alpha", "n"],
                        [(a["k"], a["S"], t["alpha"], t["n"]) for a, t in zip(s["aggregates"], s["top_window"])]))
    lines.append(f"trivial class exponent = {s['trivial_class_exponent']}")
    return lines


def _cmd_charpoly(args, job):
    a = analyze(job.input, job.overrides)
    t = {0: a.delta0, 1: a.delta1, 2: a.delta2}[args.level]
    if t is None:
        raise UnsupportedConfiguration(a.notes[0] if a.notes else "deficiencies unavailable")
    body = io.table_json(t)
    body["factored"] = t.factored()
    rep = {"input": io.input_json(job, a), "charpoly": {"level": args.level, **body}}
    lines = [body["expansion"], f"factored: {body['factored']}", ""]
    lines.extend(_table(["class k", "h"], [(c["k"], c["h"]) for c in body["classes"]]))
    return rep, lines, None


def _cmd_zeta(args, job):
    a = analyze(job.input, job.overrides)
    rep = {"input": io.input_json(job, a), "zeta": io.zeta_json(a)}
    return rep, [a.zeta.factored(), f"chi(U) = {a.chi}"], None


def _cmd_spectrum(args, job):
    a = analyze(job.input, job.overrides)
    rep = {"input": io.input_json(job, a), "spectrum": io.spectrum_json(a)}
    lines = _human_spectrum(rep["spectrum"])[1:]
    for loc in rep["spectrum"]["local"]:
        lines.append(f"{loc['point']}: " + ", ".join(f"({s['alpha']},{s['n']})" for s in loc["spectrum"]))
    return rep, lines, None


def _located(args, job):
    locus = find_singular_points(job.input, job.overrides)
    return io.germ_at(job.input, locus, io.parse_point(args.point))


def _cmd_local(args, job):
    p, singular = _located(args, job)
    r = local_report(job.input, p)
    body = io.local_json(r)
    body["singular"] = singular
    rep = {"local": body}
    jumps = ", ".join(f"({j['alpha']},{'-' if j['jump'] is None else j['jump']})" for j in body["jumping_numbers"])
    spectrum = ", ".join(f"({s['alpha']},{s['n']})" for s in body["spectrum"])
    lines = [f"point {r.point}", f"lct {body['lct']}", f"jumps {{{jumps}}}", f"spectrum {{{spectrum}}}",
             f"branches {r.branches}  delta {r.delta}"]
    return rep, lines, None


def _cmd_resolve(args, job):
    p, singular = _located(args, job)
    body = io.exceptional_json(p.E)
    num = germ_numerics(p.E)
    body["numerics"] = {"delta": num.delta, "branches": num.branches,
                        "multiplicity_sequence": list(num.multiplicity_sequence)}
    rep = {"point": p.label(), "singular": singular, "resolution": body}
    lines = [f"point {p.label()}", ""]
    lines.extend(_table(["E", "N", "k", "E^2", "proximate to", "attached"],
                        [(n["index"], n["N_total"], n["k"], n["self_intersection"],
                          ",".join(map(str, n["proximate_to"])) or "-", ",".join(n["attachments"]) or "-")
                         for n in body["nodes"]]))
    return rep, lines, None


def _parse_monomials(gens_text: str, names: Sequence[str] | None):
    parts = [g.strip() for g in gens_text.split(",") if g.strip()]
    if not parts:
        raise io.JobError("no generators given")
    if names is None:
        used = [v for v in PROJECTIVE_VARS if any(v in g for g in parts)]
        names = PROJECTIVE_VARS[: PROJECTIVE_VARS.index(used[-1]) + 1] if used else PROJECTIVE_VARS[:1]
    exps = []
    for g in parts:
        poly = parse_polynomial(g, names)
        if len(poly.terms) != 1:
            raise io.JobError(f"generator {g!r} is not a monomial")
        exps.append(next(iter(poly.terms)))
    return tuple(names), MonomialIdeal.from_generators(len(names), exps)


def _monomial_text(e, names):
    parts = [v if k == 1 else f"{v}^{k}" for v, k in zip(names, e) if k]
    return "*".join(parts) or "1"


def _cmd_howald(args):
    names = tuple(v.strip() for v in args.variables.split(",")) if args.variables else None
    names, I = _parse_monomials(args.generators, names)
    rep = {"variables": list(names), "generators": [_monomial_text(g, names) for g in I.generators]}
    lines = []
    show_all = not (args.lct or args.alpha or args.jumps)
    if args.lct or show_all:
        rep["lct"] = io.q(monomial_lct(I))
        lines.append(rep["lct"])
    if args.alpha:
        J = howald_multiplier(I, parse_rational(args.alpha))
        rep["multiplier_ideal"] = {"alpha": io.q(parse_rational(args.alpha)),
                                   "generators": [_monomial_text(g, names) for g in J.generators]}
        lines.append(",".join(rep["multiplier_ideal"]["generators"]))
    if args.jumps:
        js = monomial_jumping_numbers(I, parse_rational(args.jumps))
        rep["jumping_numbers"] = [io.q(j) for j in js]
        lines.append(", ".join(rep["jumping_numbers"]))
    if show_all:
        rep["facets"] = [{"normal": list(f.normal), "offset": f.offset} for f in newton_polyhedron(I).facets]
        lines.extend(_table(["normal", "offset"], [(tuple(f["normal"]), f["offset"]) for f in rep["facets"]]))
    return rep, lines, None


_JOB_COMMANDS = {
    "analyze": _cmd_analyze,
    "charpoly": _cmd_charpoly,
    "zeta": _cmd_zeta,
    "spectrum": _cmd_spectrum,
    "local": _cmd_local,
    "resolve": _cmd_resolve,
}


def _error_line(code: int, exc: BaseException) -> str:
    kind = {EXIT_INPUT: "input", EXIT_UNSUPPORTED: "unsupported", EXIT_INVARIANT: "invariant"}[code]
    msg = " ".join(str(exc).split()) or type(exc).__name__
    return json.dumps({"error": kind, "exit_code": code, "type": type(exc).__name__, "reason": msg}) + "\n"


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (IrrationalSingularPoint, IrrationalInfinitelyNearPoint, UnsupportedConfiguration)):
        return EXIT_UNSUPPORTED
    if isinstance(exc, (ValueError, OSError, _UsageError, KeyError)):
        return EXIT_INPUT
    return EXIT_INVARIANT


def run(argv: Sequence[str]) -> RunResult:
    """Execute one command and capture its output and exit code."""
    try:
        args = _build_parser().parse_args(list(argv))
        if args.command == "howald":
            rep, lines, failure = _cmd_howald(args)
        else:
            rep, lines, failure = _JOB_COMMANDS[args.command](args, _read_job(args.job))
    except InvariantViolation as exc:
        return RunResult(EXIT_INVARIANT, "", _error_line(EXIT_INVARIANT, exc))
    except Exception as exc:  # every error path maps onto a documented exit code
        code = _exit_code(exc)
        return RunResult(code, "", _error_line(code, exc))
    out = io.dumps(rep) if args.json else "\n".join(lines) + "\n"
    if failure is not None:
        return RunResult(EXIT_UNSUPPORTED, out, _error_line(EXIT_UNSUPPORTED, failure))
    return RunResult(EXIT_OK, out, "")


def main(argv: Sequence[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.code


if __name__ == "__main__":
    raise SystemExit(main())
