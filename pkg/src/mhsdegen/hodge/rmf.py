"""Monodromy and relative monodromy filtrations."""
from __future__ import annotations

from fractions import Fraction

from ..algebra.matrix import Matrix, solve_linear
from ..algebra.subspace import IncreasingFiltration, Subspace, image, kernel
from .basis import AdaptedBasis
from .data import ValidationError

_ZERO = Fraction(0)


def jordan_tops(N):
    """[(top vector, j)] with N^j top != 0, N^{j+1} top = 0, spanning all strings."""
    n = N.nrows
    if n == 0:
        return []
    powers = [Matrix.identity(n)]
    while not powers[-1].is_zero():
        powers.append(powers[-1] @ N)
    K = [kernel(P) for P in powers]  # K[j] = ker N^j
    top = len(powers) - 1
    Kx = lambda k: K[k] if k < len(K) else Subspace.full(n)
    out = []
    for j in range(top - 1, -1, -1):
        sub = K[j] + Kx(j + 2).image(N)
        for v in _complement(sub, K[j + 1]):
            out.append((v, j))
    return out


def _complement(sub, ambient):
    """Vectors of ambient's basis extending sub to ambient."""
    acc = sub
    out = []
    for v in ambient.basis:
        if not acc.contains(v):
            out.append(list(v))
            acc = acc + Subspace(sub.n, [v])
    return out


def monodromy_filtration(N, center=0):
    """Pure monodromy filtration via a Jordan basis."""
    n = N.nrows
    vecs = []
    for v, j in jordan_tops(N):
        u = v
        for i in range(j + 1):
            vecs.append((center + j - 2 * i, u))
            u = N.apply(u)
    return _filtration_from_weighted(n, vecs)


def monodromy_filtration_formula(N, center=0):
    """M_k = sum_{i-j=k} ker N^{i+1} cap Im N^j, shifted by ``center``."""
    n = N.nrows
    powers = [Matrix.identity(n)]
    while not powers[-1].is_zero():
        powers.append(powers[-1] @ N)
    m = len(powers) - 1
    ker = lambda k: kernel(powers[k]) if k <= m else Subspace.full(n)
    img = lambda k: image(powers[k]) if k <= m else Subspace(n)
    steps = {}
    for k in range(-m - 1, m + 1):
        acc = Subspace(n)
        for j in range(0, m + 1):
            i = k + j
            if i < 0:
                continue
            acc = acc + (ker(i + 1) & img(j))
        steps[k + center] = acc
    steps[center + m + 1] = Subspace.full(n)
    return IncreasingFiltration(n, steps)


def _filtration_from_weighted(n, vecs):
    if not vecs:
        return IncreasingFiltration(n, {0: Subspace(n)})
    ks = [k for k, _ in vecs]
    steps = {min(ks) - 1: Subspace(n)}
    for k in range(min(ks), max(ks) + 1):
        steps[k] = Subspace(n, [v for w, v in vecs if w <= k])
    return IncreasingFiltration(n, steps)


def _check_preserves(N, basis):
    Nc = basis.op_to(N)
    if not basis.preserves(Nc):
        raise ValidationError("N does not preserve W")
    if not Nc.is_nilpotent():
        raise ValidationError("N is not nilpotent")
    return Nc


def relative_monodromy_filtration(N, W, basis=None):
    """M(N, W), or ValidationError if it does not exist."""
    basis = basis or AdaptedBasis.canonical(W)
    Nc = _check_preserves(N, basis)
    Mc = _rmf_coords(Nc, basis)
    M = Mc.image(basis.P)
    if not verify_rmf(N, W, M):
        raise ValidationError("relative monodromy filtration failed its defining axioms")
    return M


def _rmf_coords(Nc, basis):
    n = basis.n
    weighted = []  # (weight, vector) in coordinates, a basis adapted to M
    Mk = lambda k: Subspace(n, [v for w, v in weighted if w <= k])
    powers = [Matrix.identity(n)]
    for _ in range(n):
        powers.append(powers[-1] @ Nc)
    for l in basis.weight_list():
        a, b = basis.blocks[l]
        Nl = Nc.submatrix(range(a, b), range(a, b))
        lower = list(range(0, a))
        new = []
        for p0, j in jordan_tops(Nl):
            pt = [_ZERO] * n
            pt[a:b] = p0
            target = Mk(l - j - 2)
            Nj1 = powers[j + 1]
            if lower:
                ann = target.annihilator()
                if ann:
                    A = Matrix(ann, n) @ Nj1
                    lhs = A.submatrix(range(A.nrows), lower)
                    rhs = [-x for x in A.apply(pt)]
                    sol = solve_linear(lhs, rhs)
                    if sol is None:
                        raise ValidationError(
                            f"relative monodromy filtration does not exist: a string of length {j + 1} "
                            f"on gr_{l} admits no lift with N^{j + 1} landing in M_{l - j - 2}"
                        )
                    for idx, x in zip(lower, sol[0]):
                        pt[idx] = x
            elif not target.contains(Nj1.apply(pt)):
                raise ValidationError("relative monodromy filtration does not exist")
            u = pt
            for i in range(j + 1):
                new.append((l + j - 2 * i, u))
                u = Nc.apply(u)
        weighted.extend(new)
    return _filtration_from_weighted(n, weighted)


def verify_rmf(N, W, M, basis=None):
    """Both defining axioms, checked independently of the construction."""
    basis = basis or AdaptedBasis.canonical(W)
    n = W.n
    lo, hi = M.lo - 1, M.hi + 1
    for k in range(lo, hi + 1):
        if not M[k].image(N).issubspace(M[k - 2]):
            return False
    Nc = basis.op_to(N)
    Mc = M.image(basis.Pinv)
    for w in basis.weight_list():
        a, b = basis.blocks[w]
        Nw = Nc.submatrix(range(a, b), range(a, b))
        ref = monodromy_filtration_formula(Nw, w)
        for k in range(min(lo, ref.lo - 1), max(hi, ref.hi) + 1):
            ind = Mc[k] & basis.coordW[w]
            got = Subspace(b - a, [list(v[a:b]) for v in ind.basis])
            if got != ref[k]:
                return False
    return True


def weights_of(M, vectors):
    """Weight of each vector: the least k with v in M_k."""
    out = []
    for v in vectors:
        k = M.lo - 1
        while not M[k].contains(v):
            k += 1
        out.append(k)
    return out
