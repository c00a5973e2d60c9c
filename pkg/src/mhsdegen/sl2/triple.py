"""sl2-triples on gr^W, primitive decompositions and the rings A0, A, B0, B."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.matrix import Matrix, commutator, solve_linear
from ..algebra.subspace import Subspace, kernel
from ..hodge.data import ValidationError
from ..hodge.rmf import jordan_tops

_0, _1 = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class Sl2Triple:
    N: Matrix
    H: Matrix
    Np: Matrix

    def check(self):
        N, H, Np = self.N, self.H, self.Np
        return (
            commutator(H, N) == N.scale(-2)
            and commutator(H, Np) == Np.scale(2)
            and commutator(Np, N) == H
        )


def monodromy_grading(N):
    """H acting by j - 2i on N^i v for each Jordan string top v with N^j v != 0."""
    n = N.nrows
    cols, wts = [], []
    for v, j in jordan_tops(N):
        u = v
        for i in range(j + 1):
            cols.append(u)
            wts.append(Fraction(j - 2 * i))
            u = N.apply(u)
    if not cols:
        return Matrix.zeros(n)
    P = Matrix.from_columns(cols)
    return P @ Matrix.diag(wts) @ P.inverse()


def _vec(M):
    return [x for r in M.rows for x in r]


def _unvec(v, n):
    return Matrix([v[i * n:(i + 1) * n] for i in range(n)], n)


def sl2_triple_on_gr(N, H=None):
    """Complete (N, H) to an sl2-triple by solving a linear system for N+."""
    n = N.nrows
    if not N.is_nilpotent():
        raise ValidationError("sl2 triple: N is not nilpotent")
    H = monodromy_grading(N) if H is None else H
    if commutator(H, N) != N.scale(-2):
        raise ValidationError("sl2 triple: inconsistent grading, [H,N] != -2N")
    if N.is_zero():
        if not H.is_zero():
            raise ValidationError("sl2 triple: inconsistent grading for N = 0")
        return Sl2Triple(N, H, Matrix.zeros(n))
    # unknown X: [H,X] - 2X = 0 and XN - NX = H
    cols = []
    for a in range(n):
        for b in range(n):
            E = Matrix([[_1 if (i, j) == (a, b) else _0 for j in range(n)] for i in range(n)], n)
            cols.append(_vec(commutator(H, E) - E.scale(2)) + _vec(commutator(E, N)))
    A = Matrix.from_columns(cols, nrows=2 * n * n)
    sol = solve_linear(A, [_0] * (n * n) + _vec(H))
    if sol is None:
        raise ValidationError("sl2 triple: inconsistent grading, no N+ exists")
    t = Sl2Triple(N, H, _unvec(sol[0], n))
    assert t.check()
    return t


def graded_triple(Nc, basis):
    """Block-diagonal triple from gr(N) with each block's monodromy grading."""
    n = basis.n
    Ng = basis.graded_part(Nc)
    H = Matrix.zeros(n)
    for w in basis.weight_list():
        r = basis.block(w)
        Hw = monodromy_grading(Ng.submatrix(r, r))
        rows = [list(x) for x in H.rows]
        for i, a in enumerate(r):
            for j, b in enumerate(r):
                rows[a][b] = Hw.rows[i][j]
        H = Matrix(rows, n)
    return sl2_triple_on_gr(Ng, H)


# primitive decomposition


@dataclass
class PrimitiveDecomposition:
    parts: dict  # (k, r) -> Subspace

    def weight_of(self, k, r):
        return 2 * r - k


def _eigenspace(H, lam, E):
    return kernel(H - Matrix.identity(H.nrows).scale(lam)) & E


def primitive_decomposition(triple, E=None):
    """E_(k,r) = (N+)^r (ker N cap E_{H=-k})."""
    N, H, Np = triple.N, triple.H, triple.Np
    n = N.nrows
    E = Subspace.full(n) if E is None else E
    for M, name in ((N, "N"), (H, "H"), (Np, "N+")):
        if not E.image(M).issubspace(E):
            raise ValidationError(f"primitive decomposition: E is not invariant under {name}")
    kerN = kernel(N) & E
    parts = {}
    for k in range(0, n + 1):
        low = _eigenspace(H, -k, kerN)
        if not low.dim:
            continue
        vecs = [list(v) for v in low.basis]
        for r in range(0, k + 1):
            parts[(k, r)] = Subspace(n, vecs)
            vecs = [Np.apply(v) for v in vecs]
    total = sum(S.dim for S in parts.values())
    if total != E.dim:
        raise ValidationError("primitive decomposition: pieces do not span E")
    return PrimitiveDecomposition(parts)


def verify_decomposition(triple, dec, E=None):
    """Properties: direct sum, weights 2r-k, ker N^e, SL(2)-stability."""
    N, H, Np = triple.N, triple.H, triple.Np
    n = N.nrows
    E = Subspace.full(n) if E is None else E
    acc = Subspace(n)
    for S in dec.parts.values():
        acc = acc + S
    out = {"direct_sum": acc == E and sum(S.dim for S in dec.parts.values()) == E.dim}
    out["weights"] = all(
        H.apply(list(v)) == [x * (2 * r - k) for x in v] for (k, r), S in dec.parts.items() for v in S.basis
    )
    ok = True
    for e in range(0, n + 2):
        Ke = kernel(N ** e) & E if e else Subspace(n)
        sub = Subspace(n)
        for (k, r), S in dec.parts.items():
            if r < e:
                sub = sub + S
        ok = ok and Ke == sub
    out["kernel_powers"] = ok
    z = Subspace(n)
    out["stable"] = all(
        S.image(N).issubspace(dec.parts.get((k, r - 1), z))
        and S.image(Np).issubspace(dec.parts.get((k, r + 1), z))
        for (k, r), S in dec.parts.items()
    )
    return out


# E = W_0 End(gr^W) under the adjoint action


def adjoint(X):
    """ad(X) on row-major vectorized n x n matrices."""
    n = X.nrows
    m = n * n
    rows = [[_0] * m for _ in range(m)]
    for i in range(n):
        for j in range(n):
            # (XY - YX)_{ij} = sum_k X_ik Y_kj - Y_ik X_kj
            r = i * n + j
            for k in range(n):
                if X.rows[i][k] != 0:
                    rows[r][k * n + j] += X.rows[i][k]
                if X.rows[k][j] != 0:
                    rows[r][i * n + k] -= X.rows[k][j]
    return Matrix(rows, m)


def adjoint_triple(triple):
    return Sl2Triple(adjoint(triple.N), adjoint(triple.H), adjoint(triple.Np))


def E_w(basis, w):
    """Hom(gr_a, gr_{a+w}) summed over a, as a subspace of vectorized matrices."""
    n = basis.n
    wt = basis.weights
    vecs = []
    for i in range(n):
        for j in range(n):
            if wt[i] - wt[j] == w:
                v = [_0] * (n * n)
                v[i * n + j] = _1
                vecs.append(v)
    return Subspace(n * n, vecs)


def end_decomposition(Nc, basis):
    """{w: PrimitiveDecomposition of E_w} for w <= 0."""
    adt = adjoint_triple(graded_triple(Nc, basis))
    ws = basis.weight_list()
    out = {}
    for w in sorted({a - b for a in ws for b in ws if a - b <= 0}):
        E = E_w(basis, w)
        if E.dim:
            out[w] = primitive_decomposition(adt, E)
    return adt, out


# rings on monomials t^j (x) e with e in E_(k,r)


def in_A0(j, k, r):
    return j == 0 and r == 0


def in_A(j, k, r):
    return j >= 2 * r and j % 2 == 0


def in_B0(j, k, r):
    return r == 0 and j == k


def in_B(j, k, r):
    return j >= k and (j - k) % 2 == 0


def ad_tau_star(j, k, r):
    """Ad(tau*(t)) on t^j e: e has tau*-weight 2r - k."""
    return (j + 2 * r - k, k, r)


def check_ring_scaling(kr_pairs, jmax=8):
    """Ad(tau*(t)) maps B-generators onto A-generators, and B0 onto A0."""
    ok = True
    for k, r in kr_pairs:
        for j in range(0, jmax + 1):
            img = ad_tau_star(j, k, r)
            if img[0] < 0:
                ok = ok and not in_B(j, k, r)
                continue
            ok = ok and (in_B(j, k, r) == in_A(*img)) and (in_B0(j, k, r) == in_A0(*img))
    return ok


def check_product_bound(adt_dec, basis):
    """E_(w,k,r) E_(w',k',r') lands in the allowed (k'', r'') pieces."""
    n = basis.n
    allp = {}
    for w, dec in adt_dec.items():
        for kr, S in dec.parts.items():
            allp[(w,) + kr] = S
    for (w, k, r), S in allp.items():
        for (w2, k2, r2), S2 in allp.items():
            target_w = w + w2
            allowed = Subspace(n * n)
            for (w3, k3, r3), S3 in allp.items():
                if w3 == target_w and r3 <= r + r2 and k3 - 2 * r3 == (k + k2) - 2 * (r + r2):
                    allowed = allowed + S3
            for u in S.basis:
                U = Matrix([list(u[i * n:(i + 1) * n]) for i in range(n)], n)
                for v in S2.basis:
                    V = Matrix([list(v[i * n:(i + 1) * n]) for i in range(n)], n)
                    if not allowed.contains(_vec(U @ V)):
                        return False
    return True
