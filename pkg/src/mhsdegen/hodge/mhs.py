"""Deligne bigrading, delta, zeta, the canonical splitting and the inverse map.

Everything here works on an ``AdaptedBasis`` and a filtration given in its
coordinates.  No polarization is needed, so the same code serves the
filtrations W^(j) of the SL(2) machinery.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.matrix import Matrix
from ..algebra.scalars import GaussianRational, normalize
from ..algebra.subspace import DecreasingFiltration, IncreasingFiltration, Subspace
from .basis import AdaptedBasis
from .data import UnsupportedDepth, ValidationError

I = GaussianRational(0, 1)
_HALF = Fraction(1, 2)

# linear part of the universal Lie polynomial, by Hodge type of the component
ZETA_COEFFS = {
    (-1, -1): Fraction(0),
    (-2, -2): Fraction(0),
    (-1, -2): GaussianRational(0, Fraction(-1, 2)),
    (-2, -1): GaussianRational(0, Fraction(1, 2)),
    (-1, -3): GaussianRational(0, Fraction(-3, 4)),
    (-3, -1): GaussianRational(0, Fraction(3, 4)),
}
MAX_SPAN = 4


def deligne_bigrading(W, F):
    """I^{p,q} for the pair (W, F), both on the same space.

    Raises ValidationError when the candidate pieces fail to give a direct
    sum decomposition (so (W, F) is not an MHS).
    """
    n = W.n
    Fb = F.conjugate()
    lo, hi = F.lo, F.hi
    Wk = {k: W[k] for k in range(W.lo - 1, W.hi + 1)}

    def wk(k):
        if k < W.lo:
            return Subspace(n)
        if k >= W.hi:
            return Subspace.full(n)
        return Wk[k]

    out = {}
    total = Subspace(n)
    dsum = 0
    for p in range(lo, hi + 1):
        for q in range(lo, hi + 1):
            k = p + q
            if k < W.lo or k > W.hi or W.gr_dim(k) == 0:
                continue
            base = F[p] & wk(k)
            if base.dim == 0:
                continue
            acc = Fb[q] & wk(k)
            j = 1
            while k - j - 1 >= W.lo:
                acc = acc + (Fb[q - j] & wk(k - j - 1))
                j += 1
            piece = base & acc
            if piece.dim:
                out[(p, q)] = piece
                dsum += piece.dim
                total = total + piece
    if dsum != n or total.dim != n:
        raise ValidationError("bigrading: Deligne pieces do not give a direct sum decomposition")
    return out


def bigrading_frame(I_pq):
    """(P, types) with columns the concatenated bases of the pieces."""
    cols, types = [], []
    for (p, q) in sorted(I_pq):
        for v in I_pq[(p, q)].basis:
            cols.append(list(v))
            types.append((p, q))
    return Matrix.from_columns(cols), types


def grading_operator(I_pq):
    P, types = bigrading_frame(I_pq)
    return P @ Matrix.diag([Fraction(p + q) for p, q in types]) @ P.inverse()


def hodge_frame(F_gr, basis):
    """Hodge decomposition of a graded filtration in coordinates."""
    return bigrading_frame(deligne_bigrading(basis.coordW, F_gr))


def hodge_components(T, frame):
    """Split T into Hodge components {(dp, dq): matrix} w.r.t. a frame."""
    P, types = frame
    Pinv = P.inverse()
    Tt = Pinv @ T @ P
    comps = {}
    for a, row in enumerate(Tt.rows):
        for b, x in enumerate(row):
            if x == 0:
                continue
            t = (types[a][0] - types[b][0], types[a][1] - types[b][1])
            comps.setdefault(t, {})[(a, b)] = x
    out = {}
    n = T.nrows
    for t, entries in comps.items():
        m = [[Fraction(0)] * n for _ in range(n)]
        for (a, b), x in entries.items():
            m[a][b] = x
        out[t] = P @ Matrix(m, n) @ Pinv
    return out


def _mask_scale(T, frame, coeff):
    P, types = frame
    Pinv = P.inverse()
    Tt = Pinv @ T @ P
    n = T.nrows
    m = []
    for a, row in enumerate(Tt.rows):
        r = []
        for b, x in enumerate(row):
            if x == 0:
                r.append(Fraction(0))
            else:
                r.append(normalize(x * coeff((types[a][0] - types[b][0], types[a][1] - types[b][1]))))
        m.append(r)
    return P @ Matrix(m, n) @ Pinv


def in_L(delta, F_gr, basis, frame=None):
    """delta lies in L(F_gr): real, lowers W by >= 2, Hodge types p<0 and q<0."""
    if not delta.is_real():
        return False
    if not basis.is_lowering(delta, 2):
        return False
    frame = frame or hodge_frame(F_gr, basis)
    return all(p < 0 and q < 0 for (p, q) in hodge_components(delta, frame))


def weight_span(basis):
    ws = basis.weight_list()
    return ws[-1] - ws[0]


def zeta_of(delta, F_gr, basis, frame=None):
    """zeta as a linear expression in the Hodge components of delta."""
    if delta.is_zero():
        return Matrix.zeros(delta.nrows)
    frame = frame or hodge_frame(F_gr, basis)
    comps = hodge_components(delta, frame)
    for t in comps:
        if t[0] >= 0 or t[1] >= 0:
            raise ValidationError(f"delta has a Hodge component of type {t}, not in L(F_gr)")
    deep = [t for t in comps if t not in ZETA_COEFFS]
    if deep:
        raise UnsupportedDepth(
            f"zeta: delta has components of types {sorted(deep)} beyond the implemented truncation"
        )
    if weight_span(basis) > MAX_SPAN:
        keys = list(comps)
        for i, s in enumerate(keys):
            for t in keys[i:]:
                if not (comps[s] @ comps[t] - comps[t] @ comps[s]).is_zero():
                    raise UnsupportedDepth(
                        "zeta: weight span exceeds 4 and delta has noncommuting components"
                    )
    return _mask_scale(delta, frame, lambda t: ZETA_COEFFS[t])


def _real(T, what):
    if not T.is_real():
        raise ValidationError(f"{what} is not real; input is not a mixed Hodge structure")
    return T.real_part()


def lagrange_splitting(Y, basis):
    """Splitting matrix whose block-w columns are the w-eigenprojections of e_j."""
    ws = basis.weight_list()
    n = basis.n
    ident = Matrix.identity(n)
    cols = [None] * n
    for w in ws:
        Pw = ident
        for v in ws:
            if v != w:
                Pw = Pw @ (Y - ident.scale(v)).scale(Fraction(1, w - v))
        for j in basis.block(w):
            cols[j] = Pw.column(j)
    return Matrix.from_columns(cols)


@dataclass(frozen=True)
class Decomposition:
    """F = s'(exp(i delta) F_gr), s = s' exp(zeta); all in adapted coordinates."""

    basis: AdaptedBasis
    F: DecreasingFiltration
    F_gr: DecreasingFiltration
    s_prime: Matrix
    delta: Matrix
    zeta: Matrix
    s: Matrix
    Y: Matrix

    def x_spl(self):
        return self.F_gr.image(self.s)


class CoordMhs:
    """A filtration F (coordinates of ``basis``) assumed to give an MHS with W."""

    def __init__(self, basis, Fc):
        self.basis = basis
        self.F = Fc
        self._bigrading = None
        self._dec = None
        self._F_gr = None

    @property
    def F_gr(self):
        if self._F_gr is None:
            self._F_gr = self.basis.graded_filtration(self.F)
        return self._F_gr

    def bigrading(self):
        if self._bigrading is None:
            self._bigrading = deligne_bigrading(self.basis.coordW, self.F)
        return self._bigrading

    def Y(self):
        return grading_operator(self.bigrading())

    def delta_H(self):
        """The real operator on H with conj(Y) = exp(-2i delta_H) Y exp(2i delta_H)."""
        P, types = bigrading_frame(self.bigrading())
        Pinv = P.inverse()
        Y = P @ Matrix.diag([Fraction(p + q) for p, q in types]) @ Pinv
        X = Pinv @ (Y.conjugate() - Y) @ P
        lam = [p + q for p, q in types]
        n = len(lam)
        span = max(lam) - min(lam) if lam else 0
        parts = {}
        for a, row in enumerate(X.rows):
            for b, x in enumerate(row):
                if x == 0:
                    continue
                d = lam[b] - lam[a]
                if d <= 0:
                    raise ValidationError("bigrading: conjugate grading does not lower weights")
                parts.setdefault(d, [[Fraction(0)] * n for _ in range(n)])[a][b] = x
        Xk = {d: Matrix(m, n) for d, m in parts.items()}
        g = [Matrix.identity(n)]
        total = Matrix.identity(n)
        for k in range(1, span + 1):
            acc = Matrix.zeros(n)
            for j in range(1, k + 1):
                if j in Xk:
                    acc = acc + Xk[j] @ g[k - j]
            gk = acc.scale(Fraction(1, k))
            g.append(gk)
            total = total + gk
        logg = (P @ total @ Pinv).log_unipotent()
        return _real(logg.scale(I * _HALF), "delta on H")

    def delta_pair(self):
        """(s', delta) with F = s'(exp(i delta) F_gr); no zeta needed."""
        b = self.basis
        dH = self.delta_H()
        if dH.is_zero():
            Sp = lagrange_splitting(_real(self.Y(), "grading of the split point"), b)
            return Sp, Matrix.zeros(b.n)
        Fp = self.F.image(dH.scale(-I).exp_nilpotent())
        Y1 = _real(grading_operator(deligne_bigrading(b.coordW, Fp)), "grading of exp(-i delta)F")
        Sp = lagrange_splitting(Y1, b)
        return Sp, Sp.inverse() @ dH @ Sp

    def delta(self):
        return self.delta_pair()[1]

    def decompose(self):
        if self._dec is not None:
            return self._dec
        b = self.basis
        Sp, delta = self.delta_pair()
        F_gr = self.F_gr
        frame = hodge_frame(F_gr, b)
        if not in_L(delta, F_gr, b, frame):
            raise ValidationError("computed delta is not in L(F_gr)")
        z = zeta_of(delta, F_gr, b, frame)
        s = _real(Sp @ z.exp_nilpotent(), "spl_W")
        self._dec = Decomposition(b, self.F, F_gr, Sp, delta, z, s, self.Y())
        return self._dec


def recompose(basis, F_gr, s, delta):
    """Inverse of the decomposition: the F with x(gr)=F_gr, spl=s, delta."""
    n = basis.n
    if s.shape != (n, n) or delta.shape != (n, n):
        raise ValidationError("recompose: wrong matrix sizes")
    if not s.is_real() or not basis.is_lowering(s - Matrix.identity(n), 1):
        raise ValidationError("recompose: s is not a real splitting of W (1 + lowering)")
    frame = hodge_frame(F_gr, basis)
    if not in_L(delta, F_gr, basis, frame):
        raise ValidationError("recompose: delta is not in L(F_gr)")
    z = zeta_of(delta, F_gr, basis, frame)
    Sp = s @ z.scale(-1).exp_nilpotent()
    return F_gr.image(Sp @ delta.scale(I).exp_nilpotent())


def lifted_action(a, dec):
    """a . x with a graded (block diagonal in coordinates)."""
    b = dec.basis
    if not b.is_graded(a):
        raise ValidationError("lifted action: a is not a graded automorphism")
    if a.det() == 0:
        raise ValidationError("lifted action: a is not invertible")
    F_gr = dec.F_gr.image(a)
    delta = a @ dec.delta @ a.inverse()
    return recompose(b, F_gr, dec.s, delta)


def is_real_split(basis, Fc):
    return CoordMhs(basis, Fc).delta_H().is_zero()


# point-level wrappers; inputs and outputs in the original coordinates of H


def decompose_point(x):
    x.check_mhs()
    return CoordMhs(x.data.basis, x.coords).decompose()


def delta_of(x):
    """(s', delta) of an MhsPoint, both as operators on H."""
    b = x.data.basis
    dec = decompose_point(x)
    return b.op_from(dec.s_prime), b.op_from(dec.delta)


def spl_W(x):
    b = x.data.basis
    return b.op_from(decompose_point(x).s)


def x_gr(x):
    """x(gr^W) as a filtration of H via the adapted basis."""
    b = x.data.basis
    return b.filt_from(decompose_point(x).F_gr)


def recompose_point(data, F_gr, s, delta):
    """Inverse of (x_gr, spl_W, delta_of) for a point with Hodge data ``data``."""
    from .data import MhsPoint

    b = data.basis
    Fc = recompose(b, b.filt_to(F_gr), b.op_to(s), b.op_to(delta))
    return MhsPoint(data, b.filt_from(Fc))
