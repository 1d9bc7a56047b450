import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from conemono import cli, io
from conemono.monodromy import InvariantViolation
from conemono.parsing import PolynomialSyntaxError, parse_polynomial

JOBS = Path(__file__).resolve().parent.parent / "jobs"


def job(name):
    return str(JOBS / f"{name}.json")


def write(tmp_path, obj, name="job.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return str(p)


def assert_error(res, code):
    assert res.code == code
    lines = res.stderr.splitlines()
    assert len(lines) == 1
    payload = json.loads(lines[0])
    assert payload["exit_code"] == code
    return payload


# -- parsing ------------------------------------------------------------------------

def test_parse_examples():
    X = ("x", "y", "z")
    assert str(parse_polynomial("y^2*z - x^3", X)) == "-x^3 + y^2*z"
    assert str(parse_polynomial("x*z - y^2", X)) == "x*z - y^2"
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_polynomial("x + + y", X)
    assert exc.value.position == 4


# -- documented examples-------------------------------------------------------------------

def test_charpoly_level_one_on_sextic():
    res = cli.run(["charpoly", "--level", "1", job("zariski_sextic")])
    assert res.code == 0
    assert res.stdout.splitlines()[0] == "t^2 - t + 1"


def test_local_at_cusp():
    res = cli.run(["local", job("cuspidal_cubic"), "--point", "(0:0:1)"])
    assert res.code == 0
    out = res.stdout.splitlines()
    assert "lct 5/6" in out
    assert "jumps {(5/6,1)}" in out
    assert "spectrum {(5/6,1)}" in out


def test_howald_lct():
    res = cli.run(["howald", "--generators", "x^2,y^3", "--lct"])
    assert (res.code, res.stdout) == (0, "5/6\n")


def test_howald_json_and_alpha():
    res = cli.run(["howald", "--generators", "x^2,y^3", "--alpha", "5/6", "--json"])
    rep = json.loads(res.stdout)
    assert rep["multiplier_ideal"]["generators"] == ["x", "y"]
    res = cli.run(["howald", "--generators", "x*z,y^2", "--jumps", "1"])
    assert res.code == 0


def test_local_at_smooth_point():
    res = cli.run(["local", job("cuspidal_cubic"), "--point", "1:1:1", "--json"])
    rep = json.loads(res.stdout)["local"]
    assert rep["singular"] is False and rep["lct"] == "1"


def test_resolve_command():
    res = cli.run(["resolve", job("cuspidal_cubic"), "--point", "(0:0:1)", "--json"])
    rep = json.loads(res.stdout)["resolution"]
    assert [n["N_total"] for n in rep["nodes"]] == [2, 3, 6]
    assert [n["self_intersection"] for n in rep["nodes"]] == [-3, -2, -1]


def test_zeta_and_spectrum_commands():
    res = cli.run(["zeta", job("cuspidal_cubic")])
    assert res.stdout.splitlines()[0] == "(1 - t^3)^(-1)"
    rep = json.loads(cli.run(["spectrum", job("concurrent_lines"), "--json"]).stdout)["spectrum"]
    assert {"k": 2, "alpha": "7/3", "n": -1} in rep["top_window"]


def test_renamed_variables(tmp_path):
    p = write(tmp_path, {"variables": ["a", "b", "c"], "components": [{"poly": "b^2*c - a^3"}]})
    rep = json.loads(cli.run(["analyze", p, "--json"]).stdout)
    assert rep["input"]["components"][0]["poly"] == "-a^3 + b^2*c"
    assert rep["zeta"]["factored"] == "(1 - t^3)^(-1)"


# -- reports ----------------------------------------------------------------------------

REPORT_RUNS = [
    ["analyze", job("cuspidal_cubic"), "--json"],
    ["analyze", job("double_triangle"), "--json"],
    ["analyze", job("concurrent_lines"), "--json"],
    ["charpoly", "--level", "2", job("fermat_quartic"), "--json"],
    ["local", job("cuspidal_cubic"), "--point", "0:0:1", "--json"],
    ["resolve", job("coordinate_triangle"), "--point", "0:0:1", "--json"],
    ["howald", "--generators", "x^2,y^3", "--jumps", "2", "--json"],
]


@pytest.mark.parametrize("argv", REPORT_RUNS, ids=lambda a: a[0])
def test_report_round_trip_and_determinism(argv):
    first = cli.run(argv)
    assert first.code == 0
    assert io.dumps(io.loads(first.stdout)) == first.stdout
    assert cli.run(argv).stdout == first.stdout


def test_report_has_no_floats():
    text = cli.run(["analyze", job("cuspidal_cubic"), "--json"]).stdout

    def walk(o):
        if isinstance(o, dict):
            for v in o.values():
                walk(v)
        elif isinstance(o, list):
            for v in o:
                walk(v)
        else:
            assert not isinstance(o, float)

    walk(json.loads(text))


def test_analyze_echo():
    rep = json.loads(cli.run(["analyze", job("double_triangle"), "--json"]).stdout)
    assert {k: rep["input"][k] for k in ("d", "m", "r", "B", "G")} == \
        {"d": 6, "m": 2, "r": 3, "B": [0, 3], "G": [0, 1, 2]}
    assert rep["charpoly"]["1"]["expansion"] == "t^4 - 2*t^2 + 1"


def test_loads_decodes_exact_values():
    rep = io.loads(cli.run(["local", job("cuspidal_cubic"), "--point", "0:0:1", "--json"]).stdout)
    assert rep["local"]["lct"] == Fraction(5, 6)


# -- error paths --------------------------------------------------------------------------

def test_bad_json(tmp_path):
    assert_error(cli.run(["analyze", write(tmp_path, "{not json")]), 2)


def test_schema_violation(tmp_path):
    p = write(tmp_path, {"components": [{"poly": "x", "multiplicity": 0}]})
    assert "multiplicity" in assert_error(cli.run(["analyze", p]), 2)["reason"]


def test_syntax_error(tmp_path):
    p = write(tmp_path, {"components": [{"poly": "x + + y"}]})
    assert "offset 4" in assert_error(cli.run(["zeta", p]), 2)["reason"]


def test_unknown_variable_and_inhomogeneous(tmp_path):
    assert_error(cli.run(["zeta", write(tmp_path, {"components": [{"poly": "w"}]})]), 2)
    assert_error(cli.run(["zeta", write(tmp_path, {"components": [{"poly": "x + y^2"}]})]), 2)


def test_declared_point_off_curve(tmp_path):
    p = write(tmp_path, {"components": [{"poly": "y^2*z - x^3"}], "singular_points": [{"point": ["1", "2", "1"]}]})
    assert_error(cli.run(["analyze", p]), 2)


def test_missing_file_and_bad_usage():
    assert_error(cli.run(["analyze", "/nonexistent/job.json"]), 2)
    assert_error(cli.run(["charpoly", "--level", "7", job("cuspidal_cubic")]), 2)
    assert_error(cli.run(["frobnicate"]), 2)


def test_point_not_on_curve():
    assert_error(cli.run(["local", job("cuspidal_cubic"), "--point", "(1:2:1)"]), 2)


def test_irrational_singular_point(tmp_path):
    p = write(tmp_path, {"components": [{"poly": "y"}, {"poly": "x^2 + y^2 - 2*z^2"}]})
    assert assert_error(cli.run(["analyze", p]), 3)["type"] == "IrrationalSingularPoint"


def test_irrational_infinitely_near_point(tmp_path):
    p = write(tmp_path, {"components": [{"poly": "(y^2 - 2*x^2)^2*z + x^5"}]})
    assert assert_error(cli.run(["zeta", p]), 3)["type"] == "IrrationalInfinitelyNearPoint"


def test_manual_cluster_blocks_deficiencies():
    assert_error(cli.run(["charpoly", "--level", "1", job("irrational_tangents")]), 3)
    res = cli.run(["zeta", job("irrational_tangents")])
    assert res.code == 0 and res.stdout.splitlines()[0] == "(1 - t^5)^(-2)"
    res = cli.run(["analyze", job("irrational_tangents"), "--json"])
    assert_error(res, 3)
    assert json.loads(res.stdout)["charpoly"]["1"] is None


def test_invariant_violation_exit(monkeypatch):
    def boom(*a, **k):
        raise InvariantViolation("synthetic failure\nwith two lines")

    monkeypatch.setattr(cli, "analyze", boom)
    payload = assert_error(cli.run(["zeta", job("cuspidal_cubic")]), 4)
    assert payload["reason"] == "synthetic failure with two lines"


def test_reducible_component_is_input_error(tmp_path):
    p = write(tmp_path, {"components": [{"poly": "x*y*(x + y)"}]})
    assert_error(cli.run(["zeta", p]), 2)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "conemono.cli", "howald", "--generators", "x^2,y^3", "--lct"],
                         capture_output=True, text=True, check=False)
    assert (out.returncode, out.stdout) == (0, "5/6\n")
