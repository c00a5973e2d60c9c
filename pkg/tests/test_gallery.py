from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mhsdegen.gallery import examples
from mhsdegen.gallery.examples import ValuativeLabel, valuative_shift
from mhsdegen.hodge.data import ValidationError

F = Fraction
q = st.fractions(min_value=-6, max_value=6, max_denominator=4)
a_vals = st.fractions(min_value=0, max_value=6, max_denominator=4)
squares = st.integers(1, 12).map(lambda k: F(k * k))


# printed standard coordinates against the generic decomposition


@given(a_vals, q, squares)
def test_example3_standard_two_routes(a, b, y):
    printed = examples.example3_point(a, b, y)["standard"]
    core = examples.core_standard_coords("III", a, b, y)
    assert printed["delta"] == core["delta"] and printed["x"] == core["x"] and printed["s"] == core["s"]


@given(a_vals, q, squares)
def test_example4_standard_two_routes(a, b, y):
    printed = examples.example4_point(a, b, y)["standard"]
    core = examples.core_standard_coords("IV", a, b, y)
    assert printed["delta"] == core["delta"] and printed["x"] == core["x"] and printed["s"] == core["s"]


@given(a_vals, q)
def test_ladders_commute(a, b):
    ts = [F(1, 2), F(1, 3), F(2, 7)]
    assert all(examples.ladder_consistency("III", a, b, ts).values())
    assert all(examples.ladder_consistency("IV", a, b, ts).values())


def test_example_errors():
    with pytest.raises(ValidationError, match="a must be >= 0"):
        examples.example3_coords(F(-1), F(0), "star")
    with pytest.raises(ValidationError, match="unknown space"):
        examples.example3_coords(F(1), F(0), "moon")
    with pytest.raises(ValidationError, match="weak-diamond"):
        examples.example4_coords(F(1), F(0), "weak_diamond")
    with pytest.raises(ValidationError, match="a = 0"):
        examples.example4_coords(F(1), F(0), "diamond")
    with pytest.raises(ValidationError, match="y must be > 0"):
        examples.example3_point(F(1), F(0), F(0))


def test_example4_point_skips_diamond_when_not_mild():
    assert "diamond" not in examples.example4_point(F(1), F(0), F(4))
    assert "diamond" in examples.example4_point(F(0), F(0), F(4))


# valuative maps


def _p(c, side="", vec=(F(1), F(0)), infinite=False):
    return ValuativeLabel("p", F(c), side, vec, infinite, ("e1", "e2"))


@pytest.mark.parametrize("c0", [3, 2])
def test_valuative_shift_boundaries(c0):
    assert valuative_shift(_p(c0 + 2), c0).render() == "p(2, e1)"
    assert valuative_shift(_p(c0), c0).render() == "(0, e1)"
    assert valuative_shift(_p(c0 - 1), c0).render() == "(0, 0)"
    assert valuative_shift(_p(c0, "+"), c0).render() == "p(0+, e1)"
    assert valuative_shift(_p(c0, "-"), c0).render() == "(0, 0)"
    assert valuative_shift(_p(0), c0) == _p(0)
    with pytest.raises(ValidationError):
        valuative_shift(_p(c0, infinite=True), c0)


# limits


def test_noIIstar_demo():
    d = examples.noIIstar_demo()
    assert d["star_limit_depends_on_c"]
    assert d["weak_diamond_limits"] == ["(0, 0, 0, 0)"]


def test_limit_labels():
    assert examples.example3_limit(F(0), F(3), "sl2").render() == "(0, 0, 0, 0)"
    assert not examples.example3_limit(F(1), F(3), "standard").converges
    assert examples.example4_limit(F(1), F(3), "diamond").render() == "no limit (the orbit is not mild (a != 0))"


@pytest.mark.parametrize("ex,k", [("III", 5), ("IV", 7)])
def test_trajectory_csv_shape(ex, k):
    spaces = ["standard", "star"]
    text = examples.trajectory_csv(ex, F(1), F(2), spaces, [F(1), F(4), F(9)])
    lines = text.strip().split("\n")
    assert lines[0].split(",") == ["y", "t", "space"] + [f"coord_{i}" for i in range(1, k + 1)]
    assert len(lines) == 1 + 3 * len(spaces)
    assert all(len(r.split(",")) == 3 + k for r in lines[1:])
