import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from mhsdegen import cli
from mhsdegen.asymptotics.formulas import height_asymptotics, k2_regulator_asymptotics, parse_divisor
from mhsdegen.gallery import examples
from mhsdegen.sl2.orbit import is_mild, orbit_from_json, sl2_limit

F = Fraction
INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def _ok(*argv):
    code, out, err = _run(*argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == "1" and doc["command"] == argv[0]
    return doc["result"]


def _input(name):
    return str(INPUTS / name)


def _obj(name):
    return json.loads((INPUTS / name).read_text())


# each subcommand against the library call it adapts


def test_rmf():
    r = _ok("rmf", "--input", _input("rmf_example3.json"))
    assert r["axioms_hold"] is True


def test_delta_point():
    r = _ok("delta", "--input", _input("example3_point_a1_b0_y4.json"))
    std = examples.example3_point(F(1), F(0), F(4))["standard"]
    assert r["delta"][0][2] == str(std["delta"][0]) and r["delta"][1][2] == str(std["delta"][1])


def test_split_test_and_pencil():
    obj = _obj("rmf_example3.json")
    assert _ok("split-test", "--json", json.dumps(obj))["splits"] is False
    r = _ok("pencil-split", "--input", _input("pencil_example4.json"))
    assert r["status"] in ("exact", "probable")


@pytest.mark.parametrize("name", ["example3_a0_b3.json", "example3_a1_b0.json", "example4_a1_b2.json"])
def test_orbit_commands_match_library(name):
    orbit = orbit_from_json(_obj(name))
    assert _ok("validate-orbit", "--input", _input(name))["valid"] is True
    assert _ok("sl2-limit", "--input", _input(name)) == json.loads(json.dumps(sl2_limit(orbit).to_json(orbit.basis)))
    assert _ok("mild", "--input", _input(name))["mild"] == is_mild(orbit).mild


def test_diamond_and_probe():
    r = _ok("diamond", "--input", _input("example3_a0_b3.json"))
    assert all(r["checks"].values()) and r["delta"][0][2] == "3"
    assert _ok("probe", "--input", _input("example3_a0_b3.json"))["verdict"] == "converges"
    assert _ok("probe", "--input", _input("example3_a1_b0.json"))["verdict"] == "diverges"
    code, _, err = _run("diamond", "--input", _input("example3_a1_b0.json"))
    assert code == 2 and "not mild" in err


def test_r1eq():
    assert _ok("r1eq", "--input", _input("example3_a2_bm3.json"))["unanimous"] is True


def test_nocks():
    r = _ok("nocks", "--m", "2")
    assert r["w"] == ["0", "1/2", "-1/2", "0", "0"] and r["congruence_solvable"] is False


def test_ratio_chart_round_trip():
    obj = _obj("ratio_monoid_N2_chart.json")
    p = _ok("ratio", "from-chart", "--input", _input("ratio_monoid_N2_chart.json"))["point"]
    back = _ok("ratio", "to-chart", "--json", json.dumps({"monoid": obj["monoid"], "perm": obj["perm"], "point": p}))
    assert [F(x) for x in back["t"]] == [F(str(x)) for x in obj["t"]]


def test_classify_limit():
    r = _ok("classify-limit", "--input", _input("path_power_exponential.json"))
    assert set(r) == {"S_colon", "S_val", "S_bracket_val"}


def test_regulator_and_height_match_library():
    obj = _obj("regulator_fifth_roots.json")
    lib = k2_regulator_asymptotics(parse_divisor(obj["alpha"]), parse_divisor(obj["beta"]))
    assert _ok("regulator", "--input", _input("regulator_fifth_roots.json")) == json.loads(json.dumps(lib.to_json()))
    obj = _obj("height_half.json")
    lib = height_asymptotics(parse_divisor(obj["Y"]), parse_divisor(obj["Z"]))
    assert _ok("height", "--input", _input("height_half.json")) == json.loads(json.dumps(lib.to_json()))


def test_example_points_and_limits():
    r = _ok("example3", "--a", "1", "--b", "0", "--y", "4", "--space", "standard")
    std = examples.example3_point(F(1), F(0), F(4))["standard"]
    assert r["points"]["standard"]["delta"] == [str(v) for v in std["delta"]]
    lim = _ok("example4", "--a", "1", "--b", "2", "--limit", "--space", "diamond")
    assert lim["limits"]["diamond"]["label"] == examples.example4_limit(F(1), F(2), "diamond").render()


@pytest.mark.parametrize("cmd,k", [("example3", 5), ("example4", 7)])
def test_csv_and_plot_script(cmd, k, tmp_path):
    plot = tmp_path / "p.gp"
    code, out, err = _run(cmd, "--a", "1", "--b", "2", "--emit", "csv", "--grid-depth", "3", "--plot-script", str(plot))
    assert code == 0, err
    assert out.split("\n")[0].count("coord_") == k
    assert plot.read_text().count("with linespoints") == k


def test_deterministic_output():
    a = _run("mild", "--input", _input("pencil_example4.json"), "--seed", "4")
    b = _run("mild", "--input", _input("pencil_example4.json"), "--seed", "4")
    assert a == b


# errors and exit codes


def _err(code, *argv):
    c, out, err = _run(*argv)
    assert c == code and out == ""
    return json.loads(err)


def test_exit_codes():
    assert "malformed JSON" in _err(2, "rmf", "--json", "{nope")["detail"]
    assert "missing field" in _err(2, "regulator", "--json", "{}")["detail"]
    _err(2, "nocks")
    _err(2, "rmf")
    _err(2, "rmf", "--input", _input("rmf_example3.json"), "--emit", "csv")
    assert _err(3, "delta", "--input", _input("unsupported_depth.json"))["error"] == "unsupported-depth"


def test_entry_point_subprocess():
    p = subprocess.run([sys.executable, "-m", "mhsdegen.cli", "nocks", "--m", "1"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["result"]["w_nonzero"] is False
    p = subprocess.run([sys.executable, "-m", "mhsdegen.cli", "rmf", "--json", "["], capture_output=True, text=True)
    assert p.returncode == 2
