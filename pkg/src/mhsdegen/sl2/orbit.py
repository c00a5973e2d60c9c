"""Nilpotent orbits, their associated SL(2)-orbit data and the F-hat recursion.

All computations run in the adapted coordinates of the Hodge data, where W
is the coordinate filtration.  Operators handed in or reported are on H.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra.matrix import Matrix
from ..algebra.scalars import GaussianRational, format_scalar, parse_scalar
from ..algebra.subspace import Subspace, kernel
from ..hodge.basis import AdaptedBasis
from ..hodge.data import HodgeData, MhsPoint, UnsupportedDepth, ValidationError
from ..hodge.mhs import CoordMhs, deligne_bigrading, grading_operator
from ..hodge.rmf import _rmf_coords
from ..hodge.splitting import _splits_coords, splits_WN_pencil

I = GaussianRational(0, 1)
_0, _1 = Fraction(0), Fraction(1)


@dataclass
class NilpotentOrbit:
    data: HodgeData
    Ns: tuple
    F: object
    generates_orbit: bool = True
    rational_weight_filtrations: bool = True
    diagnostics: dict = field(default_factory=dict)

    @property
    def n(self):
        return len(self.Ns)

    @property
    def basis(self):
        return self.data.basis

    @property
    def Ncs(self):
        return [self.basis.op_to(N) for N in self.Ns]

    @property
    def Fc(self):
        return self.basis.filt_to(self.F)

    def point(self, ys):
        """exp(sum i y_j N_j) F in coordinates."""
        return orbit_filtration(self.Ncs, self.Fc, ys)

    def delta_at(self, ys):
        """delta_W of the orbit point, as a matrix in coordinates."""
        return CoordMhs(self.basis, self.point(ys)).delta()


def orbit_filtration(Ncs, Fc, ys):
    n = Fc.n
    X = Matrix.zeros(n)
    for y, N in zip(ys, Ncs):
        X = X + N.scale(I * Fraction(y))
    return Fc.image(X.exp_nilpotent())


def _sum(Ms, n, coeffs=None):
    S = Matrix.zeros(n)
    for k, M in enumerate(Ms):
        S = S + (M.scale(coeffs[k]) if coeffs else M)
    return S


def partial_weight_filtrations(Ncs, basis, coeffs=None):
    """W^(j) = M(sum_{k<=j} y_k N_k, W) in coordinates, j = 1..n."""
    out = []
    for j in range(1, len(Ncs) + 1):
        out.append(_rmf_coords(_sum(Ncs[:j], basis.n, coeffs[:j] if coeffs else None), basis))
    return out


# validation


def validate_orbit(data, Ns, F, seed=0):
    """NilpotentOrbit or ValidationError naming the first failing condition."""
    b = data.basis
    n = data.n
    Ns = tuple(Ns)
    Ncs = []
    for j, N in enumerate(Ns, 1):
        if N.shape != (n, n):
            raise ValidationError(f"N_{j} has the wrong size")
        if not N.is_real():
            raise ValidationError(f"N_{j} is not rational")
        if not N.is_nilpotent():
            raise ValidationError(f"N_{j} is not nilpotent")
        Nc = b.op_to(N)
        if not b.preserves(Nc):
            raise ValidationError(f"N_{j} does not preserve W")
        Ncs.append(Nc)
    for i in range(len(Ncs)):
        for j in range(i + 1, len(Ncs)):
            if Ncs[i] @ Ncs[j] != Ncs[j] @ Ncs[i]:
                raise ValidationError(f"N_{i + 1} and N_{j + 1} do not commute")
    for j, Nc in enumerate(Ncs, 1):
        for w in b.weight_list():
            r = b.block(w)
            Nw = Nc.submatrix(r, r)
            S = data.pairings[w]
            if not (Nw.T @ S + S @ Nw).is_zero():
                raise ValidationError(f"N_{j} is not an infinitesimal isometry of the pairing on gr_{w}")
    x = MhsPoint(data, F)
    x.check_dcheck()
    Fc = x.coords
    for j, Nc in enumerate(Ncs, 1):
        for p in range(Fc.lo, Fc.hi + 2):
            if not Fc[p].image(Nc).issubspace(Fc[p - 1]):
                raise ValidationError(f"Griffiths transversality: N_{j} F^{p} is not in F^{p - 1}")
    rng = random.Random(seed)
    diag = {}
    if Ncs:
        try:
            ref = partial_weight_filtrations(Ncs, b)
            coeffs = [Fraction(rng.randint(1, 97), rng.randint(1, 13)) for _ in Ncs]
            alt = partial_weight_filtrations(Ncs, b, coeffs)
        except ValidationError as e:
            raise ValidationError(f"weight filtrations: {e}") from None
        if ref != alt:
            raise ValidationError(
                "weight filtrations: M(sum y_j N_j, W) depends on y (chamber mismatch); rejected"
            )
    for Y in (Fraction(10**2), Fraction(10**4), Fraction(10**8)):
        ys = [Y ** (len(Ncs) - j) for j in range(len(Ncs))]
        pt = MhsPoint(data, b.filt_from(orbit_filtration(Ncs, Fc, ys)))
        if pt.is_in_D:
            diag["positivity_sample"] = [str(y) for y in ys]
            break
    else:
        raise ValidationError(f"positivity: orbit point not in D at sampled y ({pt.failure()})")
    return NilpotentOrbit(data, Ns, F, diagnostics=diag)


# mildness


@dataclass
class MildResult:
    mild: bool
    status: str  # "exact" or "probable"
    detail: dict = field(default_factory=dict)


def is_mild(orbit, samples=64, seed=0):
    b = orbit.basis
    Ncs = orbit.Ncs
    nz = [N for N in Ncs if not N.is_zero()]
    if not nz:
        return MildResult(True, "exact")
    gens = [_splits_coords([N], b).splits for N in nz]
    if not all(gens):
        return MildResult(False, "exact", {"generators_split": gens})
    if len(nz) == 1:
        return MildResult(True, "exact", {"generators_split": gens})
    Ns = [N for N in orbit.Ns if not N.is_zero()]
    res = splits_WN_pencil(orbit.data.W, Ns, b, samples=samples, seed=seed)
    return MildResult(
        res.splits_all_t,
        res.status if len(nz) == 2 else "probable",
        {"generators_split": gens, "failing_t": [[str(x) for x in t] if isinstance(t, list) else str(t) for t in res.failing_t]},
    )


# SL(2)-orbit data


def fhat_chain(Ncs, Fc, basis):
    """[(W^(j), F-hat_(j))] for j = n..1 and the base point r-hat, in coordinates."""
    n = len(Ncs)
    Ws = partial_weight_filtrations(Ncs, basis)
    cur = Fc
    chain = {}
    for j in range(n, 0, -1):
        Wj = Ws[j - 1]
        Bj = AdaptedBasis.canonical(Wj)
        dec = CoordMhs(Bj, Bj.filt_to(cur)).decompose()
        Fh = Bj.filt_from(dec.x_spl())
        chain[j] = (Wj, Fh)
        cur = Fh.image(Ncs[j - 1].scale(I).exp_nilpotent())
    nonzero = [j for j in range(1, n + 1) if not Ncs[j - 1].is_zero()]
    if nonzero:
        k = nonzero[0]
        rhat = chain[k][1].image(Ncs[k - 1].scale(I).exp_nilpotent())
    else:
        rhat = Fc
    return chain, rhat


@dataclass
class TauStar:
    """Joint eigenbasis P of the gradings on gr and integer weights per column."""

    P: Matrix
    weights: list  # per column: tuple in Z^n
    block_of: list  # per column: W-weight w

    def total(self):
        return [sum(m) for m in self.weights]

    def ad_components(self, X):
        """{weight vector: component} of X under Ad(tau*)."""
        Pinv = self.P.inverse()
        Xt = Pinv @ X @ self.P
        n = X.nrows
        parts = {}
        for r, row in enumerate(Xt.rows):
            for c, x in enumerate(row):
                if x == 0:
                    continue
                m = tuple(a - b for a, b in zip(self.weights[r], self.weights[c]))
                parts.setdefault(m, [[_0] * n for _ in range(n)])[r][c] = x
        return {m: self.P @ Matrix(rows, n) @ Pinv for m, rows in parts.items()}

    def scale(self, X, t, inverse=False):
        """Ad(tau*(t,...,t)) X, or its inverse."""
        Pinv = self.P.inverse()
        Xt = Pinv @ X @ self.P
        tot = self.total()
        rows = []
        for r, row in enumerate(Xt.rows):
            rows.append([x * Fraction(t) ** ((tot[r] - tot[c]) * (-1 if inverse else 1)) for c, x in enumerate(row)])
        return self.P @ Matrix(rows, X.nrows) @ Pinv


def _joint_eigenbasis(Ys, basis):
    n = basis.n
    for i in range(len(Ys)):
        for j in range(i + 1, len(Ys)):
            if Ys[i] @ Ys[j] != Ys[j] @ Ys[i]:
                raise ValidationError("SL(2) gradings on gr do not commute")
    cols, wts, blk = [], [], []
    for w in basis.weight_list():
        r = basis.block(w)
        spaces = [(tuple(), Subspace(n, [[_1 if i == j else _0 for i in range(n)] for j in r]))]
        for Y in Ys:
            new = []
            for lab, S in spaces:
                for lam in range(-2 * n - abs(w) - 2, 2 * n + abs(w) + 3):
                    E = kernel(Y - Matrix.identity(n).scale(lam)) & S
                    if E.dim:
                        new.append((lab + (lam - w,), E))
            if sum(E.dim for _, E in new) != len(r):
                raise ValidationError("SL(2) grading is not diagonalizable with integer weights")
            spaces = new
        for lab, S in sorted(spaces, key=lambda e: e[0]):
            for v in S.basis:
                cols.append(list(v))
                wts.append(lab)
                blk.append(w)
    return TauStar(Matrix.from_columns(cols), wts, blk)


@dataclass
class Sl2LimitData:
    Phi: list  # distinct weight filtrations on gr, in order
    Phi_index: list  # j (1-based) of each member of Phi
    W_gr: list  # W^(j)(gr) for every j
    tau_star: TauStar
    rhat: object  # filtration on H
    kind: str
    F_hat_chain: list  # [(j, W^(j) on H, F-hat_(j) on H)] for j = n..1
    rhat_coords: object = None
    Ys_gr: list = None

    def to_json(self, basis):
        return {
            "kind": self.kind,
            "Phi_index": self.Phi_index,
            "tau_star_weights": [list(m) for m in self.tau_star.weights],
            "tau_star_basis": self.tau_star.P.to_strings(),
            "rhat": _filt_json(self.rhat),
        }


def _filt_json(F):
    return {str(p): [[format_scalar(x) for x in v] for v in F[p].basis] for p in range(F.lo, F.hi + 1)}


def orbit_kind(Ncs, basis):
    for N in Ncs:
        if not N.is_zero():
            return "B" if basis.graded_part(N).is_zero() else "A"
    return "A"


def sl2_limit(orbit, check_lifts=True, seed=0):
    b = orbit.basis
    Ncs = orbit.Ncs
    Fc = orbit.Fc
    n = len(Ncs)
    try:
        chain, rhat = fhat_chain(Ncs, Fc, b)
    except UnsupportedDepth:
        raise
    Ngr = [b.graded_part(N) for N in Ncs]
    Fgr = b.graded_filtration(Fc)
    chain_gr, _ = fhat_chain(Ngr, Fgr, b) if n else ({}, None)
    Ys = []
    Wgr = []
    for j in range(1, n + 1):
        Wj, Fh = chain_gr[j]
        Wgr.append(Wj)
        Ys.append(grading_operator(deligne_bigrading(Wj, Fh)))
    for Y in Ys:
        if not Y.is_real():
            raise ValidationError("SL(2) grading on gr is not real")
    Ys = [Y.real_part() for Y in Ys]
    if n:
        tau = _joint_eigenbasis(Ys, b)
    else:
        tau = TauStar(Matrix.identity(b.n), [tuple() for _ in range(b.n)], list(b.weights))
    Phi, idx = [], []
    for j in range(1, n + 1):
        if any(not Ngr[k].is_zero() for k in range(j)):
            if not Phi or Phi[-1] != Wgr[j - 1]:
                Phi.append(Wgr[j - 1])
                idx.append(j)
    data = Sl2LimitData(
        Phi=Phi,
        Phi_index=idx,
        W_gr=Wgr,
        tau_star=tau,
        rhat=b.filt_from(rhat),
        kind=orbit_kind(Ncs, b),
        F_hat_chain=[(j, chain[j][0].image(b.P), b.filt_from(chain[j][1])) for j in range(n, 0, -1)],
        rhat_coords=rhat,
        Ys_gr=Ys,
    )
    if check_lifts and n >= 2:
        _check_lift_independence(orbit, data, seed)
    return data


def _check_lift_independence(orbit, data, seed):
    """Recompute with N_j + sum_{k<j} c_k N_k and with F moved inside exp(i sigma_R) F."""
    rng = random.Random(seed)
    b = orbit.basis
    Ncs = orbit.Ncs
    lifted = []
    for j, N in enumerate(Ncs):
        M = N
        for k in range(j):
            M = M + Ncs[k].scale(Fraction(rng.randint(0, 5), rng.randint(1, 4)))
        lifted.append(M)
    shift = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in Ncs]
    F2 = orbit_filtration(Ncs, orbit.Fc, shift)
    _, rhat2 = fhat_chain(lifted, F2, b)
    if rhat2 != data.rhat_coords:
        raise ValidationError("associated SL(2)-orbit depends on the choice of lifts (internal error)")


# rational reconstruction of limits along t -> 0


def _poly_eval(c, t):
    acc = _0
    for x in reversed(c):
        acc = acc * t + x
    return acc


def _fit_rational(ts, vs, d):
    """(P, Q) of degrees <= d with P(t) = v Q(t) on the given points, or None."""
    from ..algebra.matrix import solve_linear

    rows = []
    for t, v in zip(ts, vs):
        pw = [t ** i for i in range(d + 1)]
        rows.append(pw + [-v * x for x in pw])
    A = Matrix(rows, 2 * d + 2)
    sol = solve_linear(A, [_0] * len(rows))
    for vec in sol[1]:
        P, Q = vec[: d + 1], vec[d + 1:]
        if any(q != 0 for q in Q):
            return P, Q
    return None


def _limit_at_zero(P, Q):
    a = next((i for i, x in enumerate(P) if x != 0), None)
    bq = next(i for i, x in enumerate(Q) if x != 0)
    if a is None or a > bq:
        return _0
    if a == bq:
        return P[a] / Q[bq]
    return None  # diverges


class RationalLimit:
    """Exact limits at t=0 of matrix-valued rational functions of t."""

    def __init__(self, f, start=11, dmax=16):
        self.f = f
        self.ts = []
        self.vals = []
        self.next = start
        self.dmax = dmax

    def _ensure(self, k):
        while len(self.ts) < k:
            t = Fraction(1, self.next)
            self.next += 1
            try:
                v = self.f(t)
            except (ValidationError, ZeroDivisionError):
                continue
            self.ts.append(t)
            self.vals.append(v)

    def entry_functions(self):
        """{(r, c): (P, Q)} for every entry."""
        self._ensure(1)
        nr, nc = self.vals[0].shape
        todo = {(r, c) for r in range(nr) for c in range(nc)}
        out = {}
        for d in range(0, self.dmax + 1):
            need = 2 * d + 1 + 3
            self._ensure(need)
            ts = self.ts[:need]
            for rc in sorted(todo):
                vs = [v.rows[rc[0]][rc[1]] for v in self.vals[:need]]
                fit = _fit_rational(ts[: 2 * d + 1], vs[: 2 * d + 1], d)
                if fit is None:
                    continue
                P, Q = fit
                ok = True
                for t, v in zip(ts[2 * d + 1:], vs[2 * d + 1:]):
                    q = _poly_eval(Q, t)
                    if q == 0 or _poly_eval(P, t) / q != v:
                        ok = False
                        break
                if ok:
                    out[rc] = (P, Q)
            todo -= set(out)
            if not todo:
                return out
        raise UnsupportedDepth("rational reconstruction: degree bound exceeded")

    def limit(self):
        """(matrix of limits, set of divergent entries)."""
        fs = self.entry_functions()
        nr, nc = self.vals[0].shape
        rows = [[_0] * nc for _ in range(nr)]
        bad = []
        for (r, c), (P, Q) in fs.items():
            v = _limit_at_zero(P, Q)
            if v is None:
                bad.append((r, c))
            else:
                rows[r][c] = v
        return Matrix(rows, nc), sorted(bad)


def trajectory_ys(n, t):
    """y_j = t^(-2(n-j+1)), so every t_j = (y_{j+1}/y_j)^(1/2) equals t."""
    t = Fraction(t)
    return [t ** (-2 * (n - j)) for j in range(n)]


# diamond points


@dataclass
class DiamondPoint:
    limit: Sl2LimitData
    s: Matrix  # on H
    delta: Matrix  # on H
    delta0: Matrix
    checks: dict


def diamond_point(orbit, mild=None):
    from ..hodge.mhs import in_L, lagrange_splitting

    mild = mild or is_mild(orbit)
    if not mild.mild:
        raise ValidationError("diamond point: orbit is not mild")
    b = orbit.basis
    n = orbit.n
    lim = sl2_limit(orbit)
    tau = lim.tau_star

    def dec_at(t):
        return CoordMhs(b, orbit.point(trajectory_ys(n, t))).decompose()

    cache = {}

    def get(t):
        if t not in cache:
            cache[t] = dec_at(t)
        return cache[t]

    if n == 0:
        d = CoordMhs(b, orbit.Fc).decompose()
        delta, s = d.delta, d.s
    else:
        delta, bad = RationalLimit(lambda t: get(t).delta.real_part()).limit()
        if bad:
            raise ValidationError("diamond point: delta diverges along the orbit")
        s, bad_s = RationalLimit(lambda t: get(t).s).limit()
        if bad_s:
            raise ValidationError("diamond point: spl_W diverges along the orbit")
    comps = tau.ad_components(delta) if n else {(): delta}
    nonpos = all(all(x <= 0 for x in m) for m in comps)
    zero = tuple(0 for _ in range(n))
    delta0 = comps.get(zero, Matrix.zeros(b.n))
    rhat_gr = b.graded_filtration(lim.rhat_coords)
    typeok = in_L(delta0, rhat_gr, b)
    checks = {"weights_nonpositive": nonpos, "delta0_hodge_type": typeok}
    if typeok:
        from ..hodge.mhs import recompose

        Fz = recompose(b, rhat_gr, s, delta0)
        checks["delta0_is_delta_of_orbit_point"] = CoordMhs(b, Fz).delta() == delta0
    else:
        checks["delta0_is_delta_of_orbit_point"] = False
    checks["s_equals_spl_rhat"] = CoordMhs(b, lim.rhat_coords).decompose().s == s
    return DiamondPoint(lim, b.op_from(s), b.op_from(delta), b.op_from(delta0), checks)


def twisted_delta_limit(orbit, lim=None):
    """lim Ad(tau*(t))^{-1} delta_W along the trajectory, with divergent entries."""
    b = orbit.basis
    n = orbit.n
    lim = lim or sl2_limit(orbit, check_lifts=False)
    tau = lim.tau_star

    def f(t):
        d = CoordMhs(b, orbit.point(trajectory_ys(n, t))).delta()
        return tau.scale(d, t, inverse=True)

    return RationalLimit(f).limit()


# numeric convergence probe


@dataclass
class ProbeResult:
    converges: bool
    limit: list | None
    C: float | None
    exponent: float | None
    slope: list | None
    intercept: list | None
    samples: list

    def to_json(self):
        out = {"verdict": "converges" if self.converges else "diverges"}
        if self.converges:
            out["limit"] = self.limit
            out["C"] = self.C
        else:
            out["exponent"] = self.exponent
            out["slope"] = self.slope
            out["intercept"] = self.intercept
        return out


def _fmat(M):
    return [[float(x.re) if isinstance(x, GaussianRational) else float(x) for x in r] for r in M.rows]


def _maxdiff(A, B):
    return max((abs(a - b) for ra, rb in zip(A, B) for a, b in zip(ra, rb)), default=0.0)


def _maxabs(A):
    return max((abs(a) for r in A for a in r), default=0.0)


def probe_delta_convergence(orbit, K=20, tol=1e-8, on_H=True):
    import math

    b = orbit.basis
    n = orbit.n
    samples = []
    exact = []
    for k in range(1, K + 1):
        t = Fraction(1, 2**k)
        ys = trajectory_ys(n, t)
        d = orbit.delta_at(ys) if n else CoordMhs(b, orbit.Fc).delta()
        d = b.op_from(d) if on_H else d
        exact.append((ys[0] if ys else _1, d))
        samples.append((t, _fmat(d)))
    diffs = [_maxdiff(samples[k][1], samples[k - 1][1]) for k in range(1, K)]
    tail = diffs[-3:] if len(diffs) >= 3 else diffs
    if all(x < tol for x in tail):
        C = max((diffs[k - 1] / float(samples[k][0]) for k in range(1, K)), default=0.0)
        return ProbeResult(True, samples[-1][1], C, None, None, None, samples)
    # divergence: log-log slope of the size against y_1, then an exact line fit
    pts = [(math.log(float(y)), math.log(_maxabs(m))) for (y, _), (_, m) in zip(exact, samples) if _maxabs(m) > 0]
    tailp = pts[-5:]
    exponent = _lsq(tailp)[0] if len(tailp) >= 2 else None
    slope, intercept = _line_fit_matrix(exact[-4:])
    return ProbeResult(False, None, None, exponent, slope, intercept, samples)


def _lsq(pts):
    n = len(pts)
    sx = sum(p[0] for p in pts)
    sy = sum(p[1] for p in pts)
    sxx = sum(p[0] ** 2 for p in pts)
    sxy = sum(p[0] * p[1] for p in pts)
    den = n * sxx - sx * sx
    a = (n * sxy - sx * sy) / den
    return a, (sy - a * sx) / n


def _line_fit_matrix(pairs):
    """Exact least-squares slope and intercept per entry against y."""
    ys = [Fraction(y) for y, _ in pairs]
    m = len(ys)
    sx = sum(ys)
    sxx = sum(y * y for y in ys)
    den = m * sxx - sx * sx
    M0 = pairs[0][1]
    slope, inter = [], []
    for r in range(M0.nrows):
        sr, ir = [], []
        for c in range(M0.ncols):
            vs = [_real_of(M.rows[r][c]) for _, M in pairs]
            sy = sum(vs)
            sxy = sum(y * v for y, v in zip(ys, vs))
            a = (m * sxy - sx * sy) / den
            sr.append(float(a))
            ir.append(float((sy - a * sx) / m))
        slope.append(sr)
        inter.append(ir)
    return slope, inter


def _real_of(x):
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


# the one-variable equivalence battery


@dataclass
class R1eqReport:
    mild: bool
    delta_converges: bool
    split_image: bool
    spl_compatible: bool

    @property
    def values(self):
        return [self.mild, self.delta_converges, self.split_image, self.spl_compatible]

    @property
    def unanimous(self):
        return len(set(self.values)) == 1

    def to_json(self):
        return {
            "i_mild": self.mild,
            "iii_delta_converges": self.delta_converges,
            "vii_delta_of_split_image_zero": self.split_image,
            "viii_spl_compatible_with_N": self.spl_compatible,
            "unanimous": self.unanimous,
        }


def r1eq_battery(orbit, K=20, tol=1e-8):
    if orbit.n != 1:
        raise ValidationError("r1eq battery needs exactly one nilpotent")
    b = orbit.basis
    (Nc,) = orbit.Ncs
    mild = _splits_coords([Nc], b).splits
    conv = probe_delta_convergence(orbit, K=K, tol=tol).converges
    if Nc.is_zero():
        return R1eqReport(mild, conv, True, True)
    chain, rhat = fhat_chain([Nc], orbit.Fc, b)
    dec = CoordMhs(b, rhat).decompose()
    vii = dec.delta.is_zero()
    S = dec.s
    viii = Nc @ S == S @ b.graded_part(Nc)
    return R1eqReport(mild, conv, vii, viii)


# JSON


def orbit_from_json(obj, validate=True):
    from ..hodge.data import MhsPoint

    x = MhsPoint.from_json(obj)
    Ns = [Matrix.parse(m) for m in obj.get("nilpotents", [])]
    order = obj.get("order")
    if order is not None:
        if sorted(order) != list(range(len(Ns))):
            raise ValidationError("order must be a permutation of the nilpotent indices")
        Ns = [Ns[i] for i in order]
    if validate:
        return validate_orbit(x.data, Ns, x.F)
    return NilpotentOrbit(x.data, tuple(Ns), x.F)


def orbit_to_json(orbit):
    out = MhsPoint(orbit.data, orbit.F).to_json()
    out["nilpotents"] = [N.to_strings() for N in orbit.Ns]
    return out


__all__ = [
    "NilpotentOrbit",
    "validate_orbit",
    "is_mild",
    "sl2_limit",
    "diamond_point",
    "probe_delta_convergence",
    "r1eq_battery",
    "orbit_from_json",
    "parse_scalar",
]
