import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import jordan_block_matrix
from mhsdegen.algebra.matrix import Matrix, commutator
from mhsdegen.algebra.subspace import Subspace, kernel
from mhsdegen.gallery import models
from mhsdegen.hodge.data import ValidationError
from mhsdegen.hodge.rmf import monodromy_filtration
from mhsdegen.hodge.splitting import splits_WN
from mhsdegen.sl2.nocks import nocks_family, nocks_orbit
from mhsdegen.sl2.orbit import (
    diamond_point,
    is_mild,
    orbit_from_json,
    orbit_to_json,
    probe_delta_convergence,
    r1eq_battery,
    sl2_limit,
    twisted_delta_limit,
    validate_orbit,
)
from mhsdegen.sl2.random_orbits import random_orbit
from mhsdegen.sl2.triple import (
    check_product_bound,
    check_ring_scaling,
    end_decomposition,
    monodromy_grading,
    primitive_decomposition,
    sl2_triple_on_gr,
    verify_decomposition,
)

F = Fraction
seeds = st.integers(0, 10**6)
partitions = st.lists(st.integers(1, 4), min_size=1, max_size=3)


def _conjugated(parts, seed):
    rng = random.Random(seed)
    N = Matrix(jordan_block_matrix(parts))
    n = N.nrows
    while True:
        g = Matrix([[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)], n)
        if g.det() != 0:
            return g @ N @ g.inverse()


# triples


@given(partitions, seeds)
def test_triple_relations(parts, seed):
    t = sl2_triple_on_gr(_conjugated(parts, seed))
    assert t.check()
    assert commutator(t.H, t.N) == t.N.scale(-2)
    assert commutator(t.Np, t.N) == t.H


@given(partitions, seeds)
def test_grading_eigenvalues_give_monodromy_filtration(parts, seed):
    """Sums of H-eigenspaces with eigenvalue <= k give M_k, built independently."""
    N = _conjugated(parts, seed)
    H = monodromy_grading(N)
    M = monodromy_filtration(N)
    n = N.nrows
    for k in range(-n, n + 1):
        S = Subspace(n)
        for lam in range(-n, k + 1):
            S = S + kernel(H - Matrix.identity(n).scale(F(lam)))
        assert S == M[k]


@given(partitions, seeds)
def test_primitive_decomposition(parts, seed):
    t = sl2_triple_on_gr(_conjugated(parts, seed))
    dec = primitive_decomposition(t)
    assert verify_decomposition(t, dec)
    assert sum(S.dim for S in dec.parts.values()) == t.N.nrows
    # one (k, r) piece per string position, strings of length k+1
    for (k, r) in dec.parts:
        assert 0 <= r <= k


def test_triple_errors():
    with pytest.raises(ValidationError, match="not nilpotent"):
        sl2_triple_on_gr(Matrix([[1, 0], [0, 0]]))
    with pytest.raises(ValidationError, match="inconsistent grading"):
        sl2_triple_on_gr(Matrix([[0, 1], [0, 0]]), H=Matrix.identity(2))


def test_ring_scaling():
    assert check_ring_scaling([(k, r) for k in range(0, 5) for r in range(0, k + 1)])


@pytest.mark.parametrize("a", [F(0), F(2)])
def test_product_bound_example3(a):
    d = models.example3_data()
    _, dec = end_decomposition(d.basis.op_to(models.example3_N(a)), d.basis)
    assert check_product_bound(dec, d.basis)


# orbits


def _ex3(a, b):
    d = models.example3_data()
    return validate_orbit(d, [models.example3_N(F(a))], models.example3_F(d, F(b)).F)


def _ex4(a, b):
    d = models.example4_data()
    return validate_orbit(d, [models.example4_N(F(a))], models.example4_F(d, F(b)).F)


def test_validate_orbit_errors():
    d = models.example3_data()
    F3 = models.example3_F(d, F(1)).F
    N0 = models.example3_N(F(0))
    with pytest.raises(ValidationError, match="wrong size"):
        validate_orbit(d, [Matrix.zeros(2)], F3)
    with pytest.raises(ValidationError, match="not nilpotent"):
        validate_orbit(d, [Matrix.identity(3)], F3)
    with pytest.raises(ValidationError, match="do not commute"):
        validate_orbit(d, [N0, models.example3_N(F(1)) - N0], F3)


def test_validate_orbit_accepts_examples():
    for a in (0, 1, F(5, 2)):
        assert _ex3(a, 3).n == 1
        assert _ex4(a, 5).n == 1


def test_orbit_json_round_trip():
    o = _ex3(F(1, 2), 3)
    back = orbit_from_json(orbit_to_json(o))
    assert back.Ns == o.Ns and back.F == o.F


def test_is_mild_examples():
    assert is_mild(_ex3(0, 3)).mild
    r = is_mild(_ex3(2, 3))
    assert not r.mild and r.status == "exact"
    assert is_mild(_ex4(0, 5)).mild and not is_mild(_ex4(1, 5)).mild


def test_mildness_matches_splitting_of_generator():
    d = models.example3_data()
    for a in (F(0), F(1, 3), F(-2)):
        assert is_mild(_ex3(a, 1)).mild == splits_WN(d.W, models.example3_N(a), d.basis).splits


def test_sl2_limit_example3():
    lim = sl2_limit(_ex3(0, 3))
    j = lim.to_json(_ex3(0, 3).basis)
    assert j["kind"] == "A" and j["Phi_index"] == [1]
    assert sorted(j["tau_star_weights"]) == [[-1], [0], [1]]


@pytest.mark.parametrize("ex,b,col,zero_part", [("III", 3, 2, False), ("IV", 5, 3, True)])
def test_diamond_point_split_orbits(ex, b, col, zero_part):
    o = _ex3(0, b) if ex == "III" else _ex4(0, b)
    dp = diamond_point(o)
    assert all(dp.checks.values())
    n = o.basis.n
    expect = [[F(0)] * n for _ in range(n)]
    expect[0][col] = F(b)
    assert dp.delta == Matrix(expect, n)
    # III: delta has tau*-weight -1; IV: N is zero on gr, so delta is all weight 0
    assert dp.delta0 == (dp.delta if zero_part else Matrix.zeros(n))


def test_diamond_point_rejects_non_mild():
    with pytest.raises(ValidationError, match="not mild"):
        diamond_point(_ex3(1, 3))


def test_twisted_delta_limit():
    lim, bad = twisted_delta_limit(_ex3(0, 3))
    assert lim.is_zero() and bad == []
    _, bad = twisted_delta_limit(_ex3(2, 3))
    assert bad == [(1, 2)]


@pytest.mark.parametrize("a", [F(1), F(2), F(-3, 2)])
def test_probe_divergence_slope_is_a(a):
    """For Example III the divergent entry of delta grows like a y."""
    p = probe_delta_convergence(_ex3(a, 3))
    assert not p.converges
    assert abs(p.slope[1][2] - float(a)) < 1e-9


def test_probe_converges_on_mild():
    p = probe_delta_convergence(_ex3(0, 3))
    assert p.converges and abs(p.limit[0][2] - 3) < 1e-9


@given(seeds)
def test_r1eq_battery_unanimous(seed):
    orbit, _ = random_orbit(random.Random(seed), max_rank=5)
    rep = r1eq_battery(orbit)
    assert rep.unanimous, rep.to_json()
    assert rep.mild == is_mild(orbit).mild


def test_r1eq_needs_one_variable():
    o, _ = nocks_orbit(2)
    with pytest.raises(ValidationError, match="exactly one"):
        r1eq_battery(o)


# the path-dependent two-variable family


def test_nocks_m1_trivial():
    rep = nocks_family(1, numeric=False)
    assert not rep.w_nonzero and rep.congruence_solvable


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_nocks_w_nonzero_iff_congruence_fails(m):
    rep = nocks_family(m, numeric=False)
    assert rep.v_is_u_times_w
    assert rep.w_nonzero == (not rep.congruence_solvable)


def test_nocks_m3_values_and_path_gap():
    rep = nocks_family(3)
    assert rep.w == [F(0), F(0), F(2, 3), F(0), F(-1, 3), F(0), F(0)]
    assert rep.path_gap is not None and rep.path_gap > 0.1


def test_nocks_rejects_m0():
    with pytest.raises(ValidationError):
        nocks_orbit(0)
