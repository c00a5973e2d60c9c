"""The explicit degenerations: Examples III and IV, the rank-2 Tate family."""
from __future__ import annotations

from fractions import Fraction

from ..algebra.matrix import Matrix
from ..algebra.scalars import GaussianRational
from ..algebra.subspace import IncreasingFiltration, Subspace
from ..hodge.basis import AdaptedBasis
from ..hodge.data import HodgeData, MhsPoint

_0, _1 = Fraction(0), Fraction(1)
I = GaussianRational(0, 1)


def _unit(n, j):
    return [_1 if i == j else _0 for i in range(n)]


def _coord_W(n, weights):
    steps = {min(weights) - 1: Subspace(n)}
    for w in sorted(set(weights)):
        steps[w] = Subspace(n, [_unit(n, j) for j in range(n) if weights[j] <= w])
    return IncreasingFiltration(n, steps)


def _data(weights, pairings, hodge):
    n = len(weights)
    W = _coord_W(n, weights)
    basis = AdaptedBasis(W, [_unit(n, j) for j in range(n)], weights)
    return HodgeData(W, {w: Matrix(m) for w, m in pairings.items()}, hodge, basis=basis)


def _nilp(n, images):
    """Matrix sending e_j (1-based) to the given combination {i: coeff}."""
    rows = [[_0] * n for _ in range(n)]
    for j, img in images.items():
        for i, c in img.items():
            rows[i - 1][j - 1] = Fraction(c) if not isinstance(c, GaussianRational) else c
    return Matrix(rows, n)


def example3_data():
    """H = Q^3, W_-3 = W_-1 = <e1,e2>, gr_-3 with <e2,e1> = 1."""
    return _data(
        [-3, -3, 0],
        {-3: [[0, -1], [1, 0]], 0: [[1]]},
        {(-1, -2): 1, (-2, -1): 1, (0, 0): 1},
    )


def example3_N(a):
    a = Fraction(a)
    return _nilp(3, {3: {2: a}, 2: {1: 1}})


def example3_F(data, b):
    b = Fraction(b)
    e = lambda j: _unit(3, j - 1)
    f0 = [e(3)[0] + I * b, _0, _1]
    return MhsPoint.from_vectors(data, {0: [f0], -1: [f0, e(2)], -2: [e(1), e(2), e(3)]})


def example4_data():
    """H = Q^4, W_-2 = <e1>, W_-1 = <e1,e2,e3>, gr_-1 with <e3,e2> = 1."""
    return _data(
        [-2, -1, -1, 0],
        {-2: [[1]], -1: [[0, -1], [1, 0]], 0: [[1]]},
        {(-1, -1): 1, (0, -1): 1, (-1, 0): 1, (0, 0): 1},
    )


def example4_N(a):
    a = Fraction(a)
    return _nilp(4, {4: {1: a}, 3: {2: 1}})


def example4_F(data, b):
    b = Fraction(b)
    f4 = [I * b, _0, _0, _1]
    return MhsPoint.from_vectors(data, {0: [_unit(4, 2), f4], -1: [_unit(4, j) for j in range(4)]})


def tate_data():
    """H = Q^2, W_-2 = <e1>, gr_-2 of type (-1,-1), gr_0 of type (0,0)."""
    return _data([-2, 0], {-2: [[1]], 0: [[1]]}, {(-1, -1): 1, (0, 0): 1})


def tate_N(a):
    return _nilp(2, {2: {1: Fraction(a)}})


def tate_F(data, b):
    f = [I * Fraction(b), _1]
    return MhsPoint.from_vectors(data, {0: [f], -1: [_unit(2, 0), _unit(2, 1)]})


def elliptic_data():
    """Pure weight -1 of rank 2 with <e2,e1> = 1."""
    return _data([-1, -1], {-1: [[0, -1], [1, 0]]}, {(0, -1): 1, (-1, 0): 1})


def elliptic_N(a):
    return _nilp(2, {2: {1: Fraction(a)}})


def elliptic_F(data, x):
    """F^0 spanned by e2 + (x + i) e1."""
    f = [Fraction(x) + I, _1]
    return MhsPoint.from_vectors(data, {0: [f], -1: [_unit(2, 0), _unit(2, 1)]})
