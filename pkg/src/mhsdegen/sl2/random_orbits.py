"""Random one-variable nilpotent orbits of rank <= 5 built from the gallery models.

Each model is moved by a random g in G_Q: exp(L) with L rational and
W-lowering, times an element of SL_2(Q) on each rank-2 graded block and
+-1 on each rank-1 block.
"""
from __future__ import annotations

from fractions import Fraction

from ..algebra.matrix import Matrix
from ..algebra.scalars import GaussianRational
from ..gallery import models
from .orbit import validate_orbit

I = GaussianRational(0, 1)
_0, _1 = Fraction(0), Fraction(1)

FAMILIES = ("example3", "example4", "tate", "elliptic", "zero")


def _q(rng, lo=-5, hi=5, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _sl2(rng):
    while True:
        a, b, c = _q(rng), _q(rng), _q(rng)
        if a != 0:
            return [[a, b], [c, (1 + b * c) / a]]


def random_group_element(rng, basis):
    n = basis.n
    G = [[_0] * n for _ in range(n)]
    for w in basis.weight_list():
        r = list(basis.block(w))
        if len(r) == 2:
            m = _sl2(rng)
            for i in range(2):
                for j in range(2):
                    G[r[i]][r[j]] = m[i][j]
        else:
            for i in r:
                G[i][i] = Fraction(rng.choice((1, -1)))
    wt = basis.weights
    L = [[_q(rng, -3, 3, 3) if wt[i] < wt[j] else _0 for j in range(n)] for i in range(n)]
    return Matrix(L, n).exp_nilpotent() @ Matrix(G, n)


def _model(family, a, b, rng):
    if family == "example3":
        d = models.example3_data()
        return d, models.example3_N(a), models.example3_F(d, b).F
    if family == "example4":
        d = models.example4_data()
        return d, models.example4_N(a), models.example4_F(d, b).F
    if family == "tate":
        d = models.tate_data()
        return d, models.tate_N(a), models.tate_F(d, b).F
    if family == "elliptic":
        d = models.elliptic_data()
        return d, models.elliptic_N(abs(a)), models.elliptic_F(d, b).F
    if family == "zero":
        base = rng.choice(("example3", "example4", "tate", "elliptic"))
        d, _, F = _model(base, 0, b, rng)
        return d, Matrix.zeros(d.n), F
    raise ValueError(f"unknown family {family!r}")


def random_orbit(rng, family=None, mild=None, max_rank=5):
    """(orbit, meta) for a random valid one-variable orbit."""
    fams = [f for f in FAMILIES if family in (None, f)]
    while True:
        fam = rng.choice(fams)
        if mild is True:
            a = _0 if fam != "elliptic" else Fraction(rng.randint(0, 4), rng.randint(1, 3))
        elif mild is False:
            if fam in ("elliptic", "zero"):
                continue
            a = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        else:
            a = _0 if rng.random() < 0.5 else Fraction(rng.randint(1, 6), rng.randint(1, 3))
        b = _q(rng)
        data, N, F = _model(fam, a, b, rng)
        if data.n > max_rank:
            continue
        g = random_group_element(rng, data.basis)
        N2 = g @ N @ g.inverse()
        F2 = F.image(g)
        move = rng.random()
        if move < 0.25:
            F2 = F2.image(N2.scale(I * _q(rng, 0, 3, 2)).exp_nilpotent())
        elif move < 0.5:
            F2 = F2.image(N2.scale(_q(rng)).exp_nilpotent())
        try:
            orbit = validate_orbit(data, [N2], F2)
        except Exception:
            continue
        return orbit, {"family": fam, "a": str(a), "b": str(b)}
