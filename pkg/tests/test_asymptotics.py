import cmath
import json
import math
from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles.mp_dilog import bloch_wigner_mp
from mhsdegen.asymptotics.formulas import (
    AsymptoticsError,
    TorsionSectionSpec,
    fit_linear_asymptotic,
    height_asymptotics,
    k2_regulator_asymptotics,
    parse_divisor,
)
from mhsdegen.asymptotics.special import (
    bernoulli_B2,
    bernoulli_B3,
    bloch_wigner_D,
    bloch_wigner_D_brute,
    frac_part,
)

F = Fraction
INPUTS = Path(__file__).resolve().parent.parent / "inputs"
unit = st.fractions(min_value=0, max_value=1, max_denominator=30)
points = st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False)


def _sympy_bernoulli(n, x):
    v = sympy.bernoulli(n, sympy.Rational(x.numerator, x.denominator))
    return F(int(v.p), int(v.q))


# Bernoulli polynomials


@given(unit)
def test_bernoulli_closed_forms_match_sympy(x):
    assert bernoulli_B2(x) == _sympy_bernoulli(2, x)
    assert bernoulli_B3(x) == _sympy_bernoulli(3, x)


def test_bernoulli_values():
    assert bernoulli_B3(F(1, 3)) == F(1, 27)
    assert bernoulli_B2(F(1, 2)) == F(-1, 12)
    assert frac_part(F(-1, 3)) == F(2, 3)


# Bloch-Wigner D


def _ok(z):
    return abs(z) > 1e-3 and abs(z - 1) > 1e-3


@given(points)
def test_D_matches_mpmath(z):
    assume(_ok(z))
    assert abs(bloch_wigner_D(z) - bloch_wigner_mp(z)) < 1e-11


@given(points)
def test_D_symmetries(z):
    assume(_ok(z))
    d = bloch_wigner_D(z)
    assert abs(bloch_wigner_D(z.conjugate()) + d) < 1e-11
    assert abs(bloch_wigner_D(1 / z) + d) < 1e-11
    assert abs(bloch_wigner_D(1 - z) + d) < 1e-11


@given(points, points)
def test_D_five_term(x, y):
    assume(_ok(x) and _ok(y) and abs(1 - x * y) > 1e-3)
    w = 1 - x * y
    args = [x, y, (1 - x) / w, w, (1 - y) / w]
    assume(all(_ok(a) for a in args))
    assert abs(sum(bloch_wigner_D(a) for a in args)) < 1e-10


@given(st.floats(0.01, 0.99))
def test_D_vanishes_on_real_line(x):
    assert abs(bloch_wigner_D(complex(x, 0))) < 1e-14


def test_D_maximum_and_errors():
    assert abs(bloch_wigner_D(cmath.exp(1j * math.pi / 3)) - 1.0149416064096536) < 1e-13
    for z in (0, 1):
        with pytest.raises(ValueError):
            bloch_wigner_D(z)


def test_D_brute_series_agrees():
    for z in (0.3 + 0.4j, cmath.exp(2j * math.pi / 5), -0.9 + 0.1j, 2 - 1j):
        assert abs(bloch_wigner_D_brute(z, 10**6) - bloch_wigner_D(z)) < 1e-5


# regulator and height


def _div(*triples):
    return [TorsionSectionSpec(F(t), F(r), m) for t, r, m in triples]


def _divisors(base):
    """Degree-zero divisors balanced at the given base point."""
    return st.lists(st.tuples(unit.filter(lambda x: x < 1), unit.filter(lambda x: x < 1), st.integers(-3, 3)), min_size=1, max_size=3).map(
        lambda xs: _div(*xs, base + (-sum(m for _, _, m in xs),))
    )


divisors = _divisors((F(0), F(0)))


@given(divisors, divisors, divisors)
def test_regulator_a_bilinear_and_antisymmetric(x, y, z):
    a = lambda p, q: k2_regulator_asymptotics(p, q, with_b=False).a
    assert a(x + y, z) == a(x, z) + a(y, z)
    assert a(x, z) == -a(z, x)


@given(divisors, _divisors((F(1, 2), F(1, 2))))
def test_height_a_symmetric(x, y):
    assume(all(p.point() != q.point() for p in x for q in y))
    assert height_asymptotics(x, y, with_b=False).a == height_asymptotics(y, x, with_b=False).a


def test_regulator_a_on_third_torsion():
    P = _div((0, F(1, 3), 1), (0, 0, -1))
    assert k2_regulator_asymptotics(P, P).a == 0  # B3(1/3) + B3(2/3) cancel


def test_regulator_fifth_roots():
    obj = json.loads((INPUTS / "regulator_fifth_roots.json").read_text())
    al, be = parse_divisor(obj["alpha"]), parse_divisor(obj["beta"])
    r = k2_regulator_asymptotics(al, be, with_b=True)
    assert r.a == 0
    zeta = lambda t: cmath.exp(2j * math.pi * t)
    brute = bloch_wigner_mp(zeta(-1 / 5)) - bloch_wigner_mp(zeta(-2 / 5)) - bloch_wigner_mp(zeta(-2 / 5)) + bloch_wigner_mp(zeta(-3 / 5))
    assert abs(r.b - brute) < 1e-12


def test_height_half():
    obj = json.loads((INPUTS / "height_half.json").read_text())
    r = height_asymptotics(parse_divisor(obj["Y"]), parse_divisor(obj["Z"]))
    direct = sum(
        y["multiplicity"] * z["multiplicity"] * bernoulli_B2(frac_part(F(y["q_exponent"]) - F(z["q_exponent"])))
        for y in obj["Y"]
        for z in obj["Z"]
    )
    assert r.a == direct == 0  # Z has degree 0 and every r = 0 on Z
    assert r.b is None


def test_height_b_log_formula():
    Y = _div((F(1, 4), 0, 1), (0, 0, -1))
    Z = _div((F(1, 2), 0, 1), (F(1, 3), 0, -1))
    r = height_asymptotics(Y, Z, with_b=True)
    e = lambda t: cmath.exp(2j * math.pi * t)
    want = sum(
        m * n * math.log(abs(1 - e(s - t)))
        for s, m in ((F(1, 4), 1), (0, -1))
        for t, n in ((F(1, 2), 1), (F(1, 3), -1))
    )
    assert abs(r.b - want) < 1e-12


def test_asymptotics_errors():
    P = _div((0, F(1, 2), 1), (0, 0, -1))
    with pytest.raises(AsymptoticsError, match="out of scope"):
        k2_regulator_asymptotics(P, P, with_b=True)
    with pytest.raises(AsymptoticsError, match="sum to 0"):
        k2_regulator_asymptotics(_div((0, 0, 1)), P)
    with pytest.raises(AsymptoticsError, match="disjoint"):
        height_asymptotics(P, P)
    with pytest.raises(AsymptoticsError, match="malformed"):
        parse_divisor([{"root_angle": "x", "multiplicity": 1}])
    with pytest.raises(AsymptoticsError, match=r"\[0,1\)"):
        TorsionSectionSpec(F(1), F(0), 1)


def test_fit_linear_exact():
    s, c, res = fit_linear_asymptotic([(F(k), F(3, 7) * k - 2) for k in range(1, 9)])
    assert (s, c, res) == (F(3, 7), -2, 0)
    s, c, res = fit_linear_asymptotic([(float(k), 2.0 * k + 1 + 1 / k**2) for k in range(10, 60)], tail=10)
    assert abs(s - 2) < 1e-3 and res < 1e-3


def test_fit_errors():
    with pytest.raises(AsymptoticsError, match="at least 4"):
        fit_linear_asymptotic([(1, 1)])
    with pytest.raises(AsymptoticsError, match="increasing"):
        fit_linear_asymptotic([(1, 1), (1, 2), (3, 3), (4, 4)])
