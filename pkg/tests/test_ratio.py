import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles.lp_faces import lp_faces
from mhsdegen.ratio.classify import Irrational, NoLimit, classify_limit, linear_path, path_from_json, power_exponential_path
from mhsdegen.ratio.monoid import FsMonoid, MonoidError, dual_cone_monoid
from mhsdegen.ratio.ratio import (
    INF,
    LexValuation,
    RatioError,
    RatioPoint,
    chart_Nn,
    chart_Nn_inverse,
    check_pair_map_axioms,
    make_ratio_point,
    pair_map,
    random_ratio_point,
    ratio_from_pair_map,
    ratio_lift_valuation,
    ratio_to_pair_map,
    sup_inf_brackets,
    valuation_to_ratio,
)

F = Fraction

CONES = [
    [[1, 0], [1, 1], [1, 2]],
    [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0], [0, 1]],
]


@pytest.mark.parametrize("gens", CONES)
def test_faces_match_linear_programming(gens):
    mon = FsMonoid(gens)
    assert {f.gens for f in mon.faces()} == lp_faces(gens)


def test_dual_cone_faces():
    mon = dual_cone_monoid([[1, 0], [1, 3]])
    assert {f.gens for f in mon.faces()} == lp_faces(mon.generators)
    assert len(mon.faces()) == 4


def test_monoid_errors():
    with pytest.raises(MonoidError):
        FsMonoid([[1, 0], [1, 2]])  # (1,1) is missing
    with pytest.raises(MonoidError):
        FsMonoid([[1, 0], [-1, 0], [0, 1]]).faces()
    with pytest.raises(MonoidError):
        FsMonoid([[0, 0]])


def test_contains():
    mon = FsMonoid(CONES[0])
    assert mon.contains((3, 5)) and not mon.contains((1, 3)) and mon.contains((0, 0))


# ratio points

seeds = st.integers(0, 10**6)


def _point(seed, n=None):
    rng = random.Random(seed)
    mon = FsMonoid.free(n or rng.randint(1, 4)) if n != 0 else FsMonoid(rng.choice(CONES[:2]))
    return mon, random_ratio_point(mon, rng)


@given(seeds)
def test_pair_map_round_trip(seed):
    mon, p = _point(seed)
    check_pair_map_axioms(mon, pair_map(p))
    assert ratio_from_pair_map(mon, pair_map(p)) == p


@given(seeds)
def test_pair_map_round_trip_non_free(seed):
    mon, p = _point(seed, 0)
    assert ratio_from_pair_map(mon, pair_map(p)) == p
    assert valuation_to_ratio(ratio_lift_valuation(p)) == p


@given(seeds)
def test_lift_is_a_section(seed):
    mon, p = _point(seed)
    V = ratio_lift_valuation(p)
    assert valuation_to_ratio(V) == p
    for g in mon.generators:
        assert V.sign(g) > 0


@given(seeds)
def test_json_round_trip(seed):
    mon, p = _point(seed)
    assert RatioPoint.from_json(mon, p.to_json()) == p


def test_pair_map_values():
    mon = FsMonoid.free(2)
    p = make_ratio_point(mon, [{0, 1}, set()], [[2, 3]])
    assert ratio_to_pair_map(p, (1, 0), (0, 1)) == F(2, 3)
    q = make_ratio_point(mon, [{0, 1}, {1}, set()], [[1, 0], [0, 1]])
    assert ratio_to_pair_map(q, (0, 1), (1, 0)) == 0
    assert ratio_to_pair_map(q, (1, 0), (0, 1)) == INF
    with pytest.raises(RatioError):
        ratio_to_pair_map(q, (0, 0), (0, 0))


def test_bad_ratio_data():
    mon = FsMonoid(CONES[0])
    with pytest.raises(RatioError):
        make_ratio_point(mon, [{0, 1, 2}, {1}, set()], [[1, 0], [1, 1]])  # {1} is not a face
    with pytest.raises(RatioError):
        make_ratio_point(mon, [{0, 1, 2}, set()], [[1, -1]])  # not positive
    with pytest.raises(RatioError):
        check_pair_map_axioms(FsMonoid.free(2), lambda f, g: F(1))


# valuations against the bounded sup/inf brackets


def _lex(mon, rng):
    while True:
        lams = [[rng.randint(-3, 3) for _ in range(mon.m)] for _ in range(rng.randint(1, mon.m))]
        try:
            return LexValuation(mon, lams)
        except RatioError:
            pass


@given(seeds, st.integers(1, 50), st.sampled_from(CONES[:3] + CONES[4:]))
def test_valuation_matches_brackets(seed, D, gens):
    rng = random.Random(seed)
    mon = FsMonoid(gens)
    V = _lex(mon, rng)
    p = valuation_to_ratio(V)

    def element():
        cs = [rng.randint(0, 3) for _ in gens]
        return tuple(sum(c * v[j] for c, v in zip(cs, gens)) for j in range(mon.m))

    f, g = element(), element()
    if not any(f) or not any(g):
        return
    r = ratio_to_pair_map(p, f, g)
    assert r == V.ratio(f, g)
    L, U = sup_inf_brackets(V, f, g, D)
    if r == INF:
        assert U == INF and L == 64 * D
        return
    assert L <= r <= U and U - L <= F(1, D)
    if r.denominator <= D:
        assert r in (L, U)


# charts on N^n


@given(seeds)
def test_chart_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    mon = FsMonoid.free(n)
    perm = list(range(n))
    rng.shuffle(perm)
    t = [F(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(n - 1)]
    p = chart_Nn_inverse(mon, perm, t)
    assert chart_Nn(p, perm) == t


def test_chart_errors():
    mon = FsMonoid.free(3)
    p = chart_Nn_inverse(mon, [0, 1, 2], [F(1), F(0)])
    with pytest.raises(RatioError):
        chart_Nn(p, [2, 1, 0])
    with pytest.raises(RatioError):
        chart_Nn_inverse(mon, [0, 1, 2], [F(-1), F(1)])


# limit labels


@pytest.mark.parametrize("c", [F(1, 2), F(1), F(3), F(7, 5)])
def test_linear_family_depends_on_c_only_through_P(c):
    r, p, s = classify_limit(linear_path(c))
    assert (str(r), str(s)) == ("R(1)", "S(1,1)")
    assert str(p) == f"P(1,{c})"


@pytest.mark.parametrize("a,label", [(F(1, 3), "S(1/3,1)"), (F(1, 2), "S(1/2,1)"), (F(3, 4), "S(3/4,1)")])
def test_power_exponential_rational(a, label):
    assert [str(x) for x in classify_limit(power_exponential_path(a))] == ["R(0)", "P(0)", label]


def test_power_exponential_irrational():
    r, p, s = classify_limit(power_exponential_path(Irrational(2**-0.5)))
    assert str(r) == "R(0)" and str(p) == "P(0)" and s.c is None
    assert s.to_json()["a"].startswith("irrational~")


def test_path_json_and_errors():
    path = path_from_json({"family": "power_exponential", "a": {"irrational": True, "approx": "0.7071"}})
    assert isinstance(path[1].beta, Irrational)
    with pytest.raises(NoLimit):
        classify_limit(path_from_json({"family": "general", "coords": [{"gamma": "-1"}, {"gamma": "1"}]}))
    with pytest.raises(ValueError):
        path_from_json({"family": "spiral"})
