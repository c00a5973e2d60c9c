"""Splittings of W compatible with a nilpotent N, for one N or a pencil."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from ..algebra.matrix import Matrix, solve_linear
from .basis import AdaptedBasis
from .data import UnsupportedDepth, ValidationError

_ZERO = Fraction(0)


def _unknowns(basis):
    wt = basis.weights
    n = basis.n
    return [(i, j) for i in range(n) for j in range(n) if wt[i] < wt[j]]


def _system(Nc, basis):
    """Coefficient matrix and rhs of N L - L gr(N) = gr(N) - N for lowering L."""
    n = basis.n
    Ng = basis.graded_part(Nc)
    unk = _unknowns(basis)
    cols = []
    for (i, j) in unk:
        # N E_ij - E_ij Ng
        col = [_ZERO] * (n * n)
        for r in range(n):
            x = Nc.rows[r][i]
            if x != 0:
                col[r * n + j] += x
        for c in range(n):
            x = Ng.rows[j][c]
            if x != 0:
                col[i * n + c] -= x
        cols.append(col)
    rhs = [(Ng.rows[r][c] - Nc.rows[r][c]) for r in range(n) for c in range(n)]
    A = Matrix.from_columns(cols, nrows=n * n) if cols else Matrix._raw([[] for _ in range(n * n)], 0)
    return A, rhs, unk


def _check_N(N, basis):
    Nc = basis.op_to(N)
    if not basis.preserves(Nc):
        raise ValidationError("N does not preserve W")
    if not Nc.is_nilpotent():
        raise ValidationError("N is not nilpotent")
    return Nc


@dataclass
class SplitResult:
    splits: bool
    witness: Matrix | None = None  # splitting as an operator on H (original coordinates)
    witness_coords: Matrix | None = None


def splits_WN(W, N, basis=None):
    """Is there a splitting s of W with N s = s gr(N)?"""
    basis = basis or AdaptedBasis.canonical(W)
    Nc = _check_N(N, basis)
    return _splits_coords([Nc], basis)


def _splits_coords(Ncs, basis):
    n = basis.n
    rows, rhs = [], []
    unk = None
    for Nc in Ncs:
        A, b, unk = _system(Nc, basis)
        rows.extend(A.tolist())
        rhs.extend(b)
    if not unk:
        ok = all(x == 0 for x in rhs)
        return SplitResult(ok, Matrix.identity(n) if ok else None, Matrix.identity(n) if ok else None)
    sol = solve_linear(Matrix(rows, len(unk)), rhs)
    if sol is None:
        return SplitResult(False)
    L = [[_ZERO] * n for _ in range(n)]
    for (i, j), x in zip(unk, sol[0]):
        L[i][j] = x
    S = Matrix.identity(n) + Matrix(L, n)
    for Nc in Ncs:
        assert Nc @ S == S @ basis.graded_part(Nc)
    return SplitResult(True, basis.op_from(S), S)


def common_splitting(W, Ns, basis=None):
    """One splitting compatible with every N in Ns."""
    basis = basis or AdaptedBasis.canonical(W)
    return _splits_coords([_check_N(N, basis) for N in Ns], basis)


# pencils N1 + t N2 over Q[t]

_t = sympy.Symbol("t")


def _poly(x):
    return sympy.Poly(sympy.Rational(x.numerator, x.denominator), _t, domain="QQ") if not isinstance(
        x, sympy.Poly
    ) else x


def bareiss_pencil(A0, A1, b0, b1):
    """Fraction-free elimination of (A0 + t A1 | b0 + t b1) over Q[t].

    Pivots are chosen among coefficient columns only.  Returns
    ``(consistent, pivots)`` where ``pivots`` are the pivot polynomials and
    ``consistent`` is False when a leftover augmented entry is a nonzero
    polynomial (the system is inconsistent for all but finitely many t).
    """
    m, k = A0.nrows, A0.ncols
    P = lambda a, b: sympy.Poly(
        sympy.Rational(a.numerator, a.denominator) + _t * sympy.Rational(b.numerator, b.denominator),
        _t,
        domain="QQ",
    )
    M = [[P(A0.rows[r][c], A1.rows[r][c]) for c in range(k)] + [P(b0[r], b1[r])] for r in range(m)]
    one = sympy.Poly(1, _t, domain="QQ")
    prev = one
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if not M[i][c].is_zero), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, m):
            f = M[i][c]
            for j in range(c, k + 1):
                num = piv * M[i][j] - f * M[r][j]
                M[i][j] = num.exquo(prev) if not num.is_zero else num
        pivots.append(piv)
        prev = piv
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not M[i][k].is_zero:
            return False, pivots
    return True, pivots


def positive_rational_roots(poly):
    roots = poly.ground_roots()
    return sorted(Fraction(int(q.p), int(q.q)) for q in roots if q.is_Rational and q > 0)


@dataclass
class PencilResult:
    splits_all_t: bool
    status: str  # "exact" or "probable"
    exceptional_t: list = field(default_factory=list)
    failing_t: list = field(default_factory=list)
    common_splitting: bool = False
    witness: object = None
    samples: int = 0


def splits_WN_pencil(W, Ns, basis=None, samples=64, seed=0):
    """(W, sum t_j N_j) splits for every positive rational t?

    Two generators: exact over Q(t) plus the finitely many exceptional t.
    More generators: sampled, reported as probable.
    """
    basis = basis or AdaptedBasis.canonical(W)
    Ns = list(Ns)
    Ncs = [_check_N(N, basis) for N in Ns]
    for i in range(len(Ncs)):
        for j in range(i + 1, len(Ncs)):
            if not (Ncs[i] @ Ncs[j] == Ncs[j] @ Ncs[i]):
                raise ValidationError("pencil generators do not commute")
    common = _splits_coords(Ncs, basis).splits
    if len(Ncs) == 1:
        r = _splits_coords(Ncs, basis)
        return PencilResult(r.splits, "exact", common_splitting=r.splits, witness=r.witness)
    if len(Ncs) == 2:
        return _pencil2(Ncs, basis, common)
    rng = random.Random(seed)
    fails = []
    for _ in range(samples):
        ts = [Fraction(rng.randint(1, 50), rng.randint(1, 50)) for _ in Ncs]
        N = Matrix.zeros(basis.n)
        for t, Nc in zip(ts, Ncs):
            N = N + Nc.scale(t)
        if not _splits_coords([N], basis).splits:
            fails.append(ts)
    for k, Nc in enumerate(Ncs):
        if not _splits_coords([Nc], basis).splits:
            fails.append([Fraction(int(i == k)) for i in range(len(Ncs))])
    return PencilResult(not fails, "probable", failing_t=fails, common_splitting=common, samples=samples)


def _pencil2(Ncs, basis, common):
    N1, N2 = Ncs
    A0, b0, unk = _system(N1, basis)
    A1, b1, _ = _system(N2, basis)
    if not unk:
        ok = all(x == 0 for x in b0) and all(x == 0 for x in b1)
        return PencilResult(ok, "exact", common_splitting=common)
    # _system is affine in N, so the pencil system is (A0 + t A1, b0 + t b1)
    consistent, pivots = bareiss_pencil(A0, A1, b0, b1)
    if not consistent:
        # find a concrete failing t for the report
        bad = next(
            t for t in (Fraction(k, 7) for k in range(1, 10**4))
            if not _splits_coords([N1 + N2.scale(t)], basis).splits
        )
        return PencilResult(False, "exact", failing_t=[bad], common_splitting=common)
    exc = sorted({r for p in pivots for r in positive_rational_roots(p)})
    fails = [t for t in exc if not _splits_coords([N1 + N2.scale(t)], basis).splits]
    witness = _generic_witness(A0, A1, b0, b1, unk, basis) if not fails else None
    return PencilResult(not fails, "exact", exceptional_t=exc, failing_t=fails,
                        common_splitting=common, witness=witness)


def _generic_witness(A0, A1, b0, b1, unk, basis):
    """L(t) over Q(t) with free parameters set to zero, as sympy expressions."""
    k = len(unk)
    A = sympy.Matrix(A0.nrows, k, lambda r, c: sympy.Rational(A0.rows[r][c]) + _t * sympy.Rational(A1.rows[r][c]))
    b = sympy.Matrix([sympy.Rational(x) + _t * sympy.Rational(y) for x, y in zip(b0, b1)])
    xs = sympy.symbols(f"x0:{k}")
    sol = sympy.linsolve((A, b), *xs)
    (vals,) = list(sol)
    vals = [sympy.simplify(v.subs({x: 0 for x in xs})) for v in vals]
    n = basis.n
    L = sympy.zeros(n, n)
    for (i, j), v in zip(unk, vals):
        L[i, j] = v
    return sympy.eye(n) + L
