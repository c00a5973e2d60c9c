"""The rank-(2m+1) two-variable family whose delta_W(F_y) has path-dependent limits.

Basis order: e'_1..e'_m, e_1..e_m (weight -m), then e (weight 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..algebra.matrix import Matrix, solve_linear
from ..algebra.scalars import GaussianRational
from ..algebra.subspace import DecreasingFiltration, Subspace
from ..gallery.models import _data
from ..hodge.data import ValidationError
from ..hodge.mhs import CoordMhs
from .orbit import orbit_filtration, validate_orbit

I = GaussianRational(0, 1)
_0, _1 = Fraction(0), Fraction(1)


def _idx(m):
    ep = lambda j: j - 1  # e'_j
    e_ = lambda j: m + j - 1  # e_j
    return ep, e_, 2 * m


def _pairing(m, eps):
    """<N1^a N2^c x, N1^b N2^d x> = eps (-1)^(a+c) [a+b=1][c+d=m-1], x = e_m."""
    ep, e_, _ = _idx(m)
    pos = {}
    for c in range(m):
        pos[(0, c)] = e_(m - c)
        pos[(1, c)] = ep(m - c)
    S = [[_0] * (2 * m) for _ in range(2 * m)]
    for (a, c), i in pos.items():
        for (b, d), j in pos.items():
            if a + b == 1 and c + d == m - 1:
                S[i][j] = Fraction(eps * (-1) ** (a + c))
    return S


def nocks_data(m, eps=1):
    hodge = {(0, -m): 1, (-m, 0): 1, (0, 0): 1}
    for j in range(1, m):
        hodge[(-j, -m + j)] = 2
    if m == 1:
        hodge = {(0, -1): 1, (-1, 0): 1, (0, 0): 1}
    return _data([-m] * (2 * m) + [0], {-m: _pairing(m, eps), 0: [[1]]}, hodge)


def nocks_nilpotents(m):
    n = 2 * m + 1
    ep, e_, e = _idx(m)
    N1 = [[_0] * n for _ in range(n)]
    N2 = [[_0] * n for _ in range(n)]
    for j in range(1, m + 1):
        N1[ep(j)][e_(j)] = _1
    N2[ep(m)][e] = _1
    for j in range(2, m + 1):
        N2[e_(j - 1)][e_(j)] = _1
        N2[ep(j - 1)][ep(j)] = _1
    return Matrix(N1, n), Matrix(N2, n)


def _unit(n, i):
    return [_1 if k == i else _0 for k in range(n)]


def nocks_F(m):
    n = 2 * m + 1
    ep, e_, e = _idx(m)
    steps = {1: Subspace(n)}
    vecs = [_unit(n, e), _unit(n, e_(m))]
    steps[0] = Subspace(n, vecs)
    for j in range(1, m):
        vecs = vecs + [_unit(n, e_(m - j)), _unit(n, ep(m - j + 1))]
        steps[-j] = Subspace(n, vecs)
    steps[-m] = Subspace.full(n)
    return DecreasingFiltration(n, steps)


def nocks_orbit(m):
    if m < 1:
        raise ValidationError("noCKS family needs m >= 1")
    N1, N2 = nocks_nilpotents(m)
    F = nocks_F(m)
    errors = []
    for eps in (1, -1):
        data = nocks_data(m, eps)
        try:
            return validate_orbit(data, [N1, N2], data.basis.filt_from(F)), eps
        except ValidationError as ex:
            errors.append(str(ex))
    raise ValidationError(f"noCKS family: no pairing sign gives a nilpotent orbit ({errors})")


def t_star(m, s1, s2):
    """alpha*_1(s1) alpha*_2(s2) as a diagonal matrix."""
    ep, e_, e = _idx(m)
    d = [_1] * (2 * m + 1)
    for j in range(1, m + 1):
        d[e_(j)] = Fraction(s1) * Fraction(s2) ** (2 * j - m)
        d[ep(j)] = Fraction(s1) ** -1 * Fraction(s2) ** (2 * j - m - 2)
    return Matrix.diag(d)


def delta_Fy(orbit, m, sig1, sig2):
    """delta_W(t*(y)^{-1} exp(i y1 N1 + i y2 N2) F) at y_j = sig_j^2."""
    sig1, sig2 = Fraction(sig1), Fraction(sig2)
    Fy = orbit_filtration(orbit.Ncs, orbit.Fc, [sig1**2, sig2**2])
    T = t_star(m, sig2 / sig1, 1 / sig2)
    return CoordMhs(orbit.basis, Fy.image(T.inverse())).delta()


def u_y(m, sig1, sig2):
    return Fraction(sig2) ** (m + 1) / Fraction(sig1)


@dataclass
class NocksReport:
    m: int
    eps: int
    w: list
    v_is_u_times_w: bool
    w_nonzero: bool
    congruence_solvable: bool | None
    congruence_mod_V_solvable: bool | None
    path_limits: dict = field(default_factory=dict)
    path_gap: float | None = None
    samples: list = field(default_factory=list)

    def to_json(self):
        return {
            "m": self.m,
            "pairing_sign": self.eps,
            "w": [str(x) for x in self.w],
            "v_y_equals_u_y_w": self.v_is_u_times_w,
            "w_nonzero": self.w_nonzero,
            "congruence_solvable": self.congruence_solvable,
            "congruence_mod_V_solvable": self.congruence_mod_V_solvable,
            "path_limits": self.path_limits,
            "path_gap": self.path_gap,
        }


def _column(M, j):
    return [M.rows[i][j] for i in range(M.nrows)]


def congruence(m, mod_V=False):
    """Is sum_{k odd} (-1)^((k-1)/2)/k! e'_{m-k+1} in the span of exp(+-iN) e_m?"""
    n = 2 * m + 1
    ep, e_, e = _idx(m)
    N1, N2 = nocks_nilpotents(m)
    N = N1 + N2
    lhs = [_0] * n
    for k in range(1, m + 1, 2):
        lhs[ep(m - k + 1)] += Fraction((-1) ** ((k - 1) // 2), factorial(k))
    a = N.scale(I).exp_nilpotent().apply(_unit(n, e_(m)))
    b = N.scale(-I).exp_nilpotent().apply(_unit(n, e_(m)))
    keep = list(range(n))
    if mod_V:
        V = {e_(j) for j in range(1, m + 1)} | {ep(j) for j in range(1, m - 2)}
        keep = [i for i in range(n) if i not in V]
    A = Matrix([[a[i], b[i]] for i in keep], 2)
    return solve_linear(A, [lhs[i] for i in keep]) is not None


def nocks_family(m, numeric=True, depth=8):
    orbit, eps = nocks_orbit(m)
    ep, e_, e = _idx(m)
    samples = [(3, 2), (7, 3), (50, 5), (1000, 11)]
    ws = []
    for s1, s2 in samples:
        d = delta_Fy(orbit, m, s1, s2)
        col = _column(d, e)
        u = u_y(m, s1, s2)
        ws.append([x / u for x in col])
        # delta_W lives only on the e-column: gr_0 -> gr_-m
        others = [d.rows[i][j] for i in range(d.nrows) for j in range(d.ncols) if j != e]
        if any(x != 0 for x in others):
            ws.append(None)
    same = all(wv == ws[0] for wv in ws)
    w = ws[0]
    rep = NocksReport(
        m=m,
        eps=eps,
        w=w,
        v_is_u_times_w=same,
        w_nonzero=any(x != 0 for x in w),
        congruence_solvable=congruence(m),
        congruence_mod_V_solvable=congruence(m, mod_V=True) if m >= 3 else None,
    )
    if numeric and m >= 3:
        rep.path_limits, rep.path_gap, rep.samples = _paths(orbit, m, depth)
    return rep


def _paths(orbit, m, depth):
    """delta along y1 = y2^4 and y1 = y2^5 with y2 = sigma^2, sigma = 2^k."""
    out = {}
    samples = []
    for label, power in (("y1=y2^4", 4), ("y1=y2^5", 5)):
        vals = []
        for k in range(1, depth + 1):
            sig2 = Fraction(2**k)
            sig1 = sig2**power
            d = delta_Fy(orbit, m, sig1, sig2)
            vals.append([[float(x) for x in r] for r in d.rows])
            samples.append((label, k, vals[-1]))
        out[label] = vals[-1]
    A, B = out["y1=y2^4"], out["y1=y2^5"]
    gap = max(abs(a - b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))
    return out, gap, samples
