"""Random instance generators shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from mhsdegen.algebra.matrix import Matrix
from mhsdegen.gallery.models import _coord_W
from mhsdegen.hodge.basis import AdaptedBasis

_0, _1 = Fraction(0), Fraction(1)


def random_partition(rng, m):
    parts = []
    while m:
        k = rng.randint(1, m)
        parts.append(k)
        m -= k
    return parts


def jordan_block_matrix(parts):
    """0/1 nilpotent with Jordan blocks of the given sizes, N e_{i+1} = e_i."""
    m = sum(parts)
    N = [[0] * m for _ in range(m)]
    s = 0
    for p in parts:
        for i in range(s, s + p - 1):
            N[i][i + 1] = 1
        s += p
    return N


def random_rmf_instance(rng, max_rank=6, lift=None):
    """(N rows as ints, weights) with W the coordinate filtration.

    lift=True conjugates a graded N by a unipotent W-lowering integer g
    (so M(N, W) exists); lift=False adds arbitrary lowering entries.
    """
    n = rng.randint(1, max_rank)
    sizes = random_partition(rng, n)
    w0 = rng.randint(-3, 0)
    weights, wcur = [], w0
    for s in sizes:
        weights += [wcur] * s
        wcur += rng.randint(1, 2)
    N = [[0] * n for _ in range(n)]
    start = 0
    for s in sizes:
        J = jordan_block_matrix(random_partition(rng, s))
        if rng.random() < 0.3:
            J = [[0] * s for _ in range(s)]
        for i in range(s):
            for j in range(s):
                N[start + i][start + j] = J[i][j]
        start += s
    lift = rng.random() < 0.5 if lift is None else lift
    lower = lambda: [[rng.randint(-2, 2) if weights[i] < weights[j] else 0 for j in range(n)] for i in range(n)]
    if lift:
        L = Matrix(lower(), n)
        g = Matrix.identity(n) + L
        Nm = g @ Matrix(N, n) @ g.inverse()
        rows = [[int(x) for x in r] for r in Nm.rows]
        if any(Fraction(x).denominator != 1 for r in Nm.rows for x in r):
            return random_rmf_instance(rng, max_rank, lift)
        return rows, weights
    P = lower()
    return [[N[i][j] + P[i][j] for j in range(n)] for i in range(n)], weights


def coord_W_and_basis(weights):
    n = len(weights)
    W = _coord_W(n, weights)
    basis = AdaptedBasis(W, [[_1 if i == j else _0 for i in range(n)] for j in range(n)], weights)
    return W, basis


def seeded(seed):
    return random.Random(seed)


def random_mhs_point(rng, max_rank=5):
    """exp(L) exp(iyN) F for a random orbit (N, F), rational y > 0 and a
    random complex W-lowering L.  Always an MHS; not necessarily in D."""
    from mhsdegen.algebra.scalars import GaussianRational
    from mhsdegen.hodge.data import MhsPoint
    from mhsdegen.sl2.random_orbits import random_orbit

    orbit, meta = random_orbit(rng, max_rank=max_rank)
    data = orbit.data
    n = data.n
    wt = data.basis.weights
    q = lambda: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    L = Matrix([[GaussianRational(q(), q()) if wt[i] < wt[j] else _0 for j in range(n)] for i in range(n)], n)
    y = Fraction(rng.randint(1, 40), rng.randint(1, 4))
    (N,) = orbit.Ns
    g = data.basis.op_from(L).exp_nilpotent() @ N.scale(GaussianRational(0, y)).exp_nilpotent()
    return MhsPoint(data, orbit.F).transform(g), meta
