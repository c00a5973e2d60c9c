"""Bases adapted to an increasing filtration.

All MHS algorithms run in coordinates where W is the coordinate filtration:
columns of ``P`` are ordered by ascending weight, W_k is spanned by the
columns of weight <= k, and the graded pieces are identified with the
coordinate blocks.  In these coordinates a splitting of W is ``1 + L`` with
``L`` strictly lowering, and a graded endomorphism is block diagonal.
"""
from __future__ import annotations

from fractions import Fraction

from ..algebra.matrix import Matrix
from ..algebra.subspace import DecreasingFiltration, IncreasingFiltration, Subspace

_ZERO = Fraction(0)
_ONE = Fraction(1)


class AdaptedBasis:
    __slots__ = ("W", "P", "Pinv", "weights", "blocks", "n", "coordW")

    def __init__(self, W, columns, weights):
        n = W.n
        if len(columns) != n:
            raise ValueError("adapted basis needs exactly n vectors")
        self.W = W
        self.n = n
        self.P = Matrix.from_columns(columns)
        if not self.P.is_real():
            raise ValueError("adapted basis must be rational")
        self.Pinv = self.P.inverse()
        self.weights = list(weights)
        blocks = {}
        for j, w in enumerate(self.weights):
            a, b = blocks.get(w, (j, j))
            blocks[w] = (a, j + 1)
        self.blocks = blocks
        self.coordW = IncreasingFiltration(
            n,
            {w: Subspace(n, [_unit(n, j) for j in range(blocks[w][1])]) for w in blocks}
            | {min(blocks) - 1: Subspace(n)},
        )

    @classmethod
    def canonical(cls, W):
        """Complement C_w = W_w with coordinates at the pivots of W_{w-1} zeroed."""
        cols, wts = [], []
        for w in W.weights():
            prev = W[w - 1]
            red = [prev.reduce(v) for v in W[w].basis]
            comp = Subspace(W.n, [v for v in red if any(x != 0 for x in v)])
            for v in comp.basis:
                cols.append(list(v))
                wts.append(w)
        return cls(W, cols, wts)

    @classmethod
    def from_spanning(cls, W, spanning):
        """Greedy choice from per-weight spanning lists, kept in the given order.

        ``spanning`` maps weight -> list of vectors lying in W_w.  A vector is
        kept when it is independent of W_{w-1} plus the vectors already kept.
        """
        cols, wts = [], []
        for w in W.weights():
            acc = W[w - 1]
            for v in spanning.get(w, []):
                if not W[w].contains(v):
                    raise ValueError(f"spanning vector for weight {w} is not in W_{w}")
                if not acc.contains(v):
                    cols.append(list(v))
                    wts.append(w)
                    acc = acc + Subspace(W.n, [v])
            if acc.dim != W[w].dim:
                raise ValueError(f"spanning vectors for weight {w} do not span gr_{w}")
        return cls(W, cols, wts)

    @classmethod
    def from_graded(cls, W, graded):
        """Explicit graded vectors, weight -> list, in the given order."""
        cols, wts = [], []
        for w in sorted(graded):
            for v in graded[w]:
                cols.append(list(v))
                wts.append(w)
        b = cls(W, cols, wts)
        for w in W.weights():
            if b.coordW[w].image(b.P) != W[w]:
                raise ValueError(f"graded vectors are not adapted to W at weight {w}")
        return b

    def block(self, w):
        a, b = self.blocks.get(w, (0, 0))
        return range(a, b)

    def weight_list(self):
        return sorted(self.blocks)

    # coordinate changes
    def vec_to(self, v):
        return self.Pinv.apply(list(v))

    def vec_from(self, c):
        return self.P.apply(list(c))

    def op_to(self, T):
        return self.Pinv @ T @ self.P

    def op_from(self, T):
        return self.P @ T @ self.Pinv

    def filt_to(self, F):
        return F.image(self.Pinv)

    def filt_from(self, F):
        return F.image(self.P)

    def subspace_to(self, S):
        return S.image(self.Pinv)

    def subspace_from(self, S):
        return S.image(self.P)

    # structure in coordinates
    def is_lowering(self, T, by=1):
        """Entries (i, j) vanish unless w_i <= w_j - by."""
        wt = self.weights
        for i, r in enumerate(T.rows):
            for j, x in enumerate(r):
                if x != 0 and wt[i] > wt[j] - by:
                    return False
        return True

    def preserves(self, T):
        return self.is_lowering(T, by=0)

    def graded_part(self, T):
        wt = self.weights
        return Matrix._raw(
            [[x if wt[i] == wt[j] else _ZERO for j, x in enumerate(r)] for i, r in enumerate(T.rows)],
            T.ncols,
        )

    def is_graded(self, T):
        wt = self.weights
        return all(x == 0 or wt[i] == wt[j] for i, r in enumerate(T.rows) for j, x in enumerate(r))

    def weight_component(self, T, d):
        """Part of T shifting W-weight by exactly d."""
        wt = self.weights
        return Matrix._raw(
            [[x if wt[i] - wt[j] == d else _ZERO for j, x in enumerate(r)] for i, r in enumerate(T.rows)],
            T.ncols,
        )

    def grading(self):
        return Matrix.diag([Fraction(w) for w in self.weights])

    def graded_filtration(self, Fc):
        """x(gr^W) in coordinates: block-diagonal filtration from F^p cap W_w."""
        n = self.n
        steps = {}
        for p in range(Fc.lo, Fc.hi + 2):
            vecs = []
            for w, (a, b) in self.blocks.items():
                inter = Fc[p] & self.coordW[w]
                for v in inter.basis:
                    u = [v[j] if a <= j < b else _ZERO for j in range(n)]
                    if any(x != 0 for x in u):
                        vecs.append(u)
            steps[p] = Subspace(n, vecs)
        return DecreasingFiltration(n, steps)

    def block_filtration(self, Fc, w):
        """F(gr_w) as a filtration of the block coordinates (length = block size)."""
        a, b = self.blocks[w]
        steps = {}
        for p in range(Fc.lo, Fc.hi + 2):
            inter = Fc[p] & self.coordW[w]
            steps[p] = Subspace(b - a, [list(v[a:b]) for v in inter.basis])
        return DecreasingFiltration(b - a, steps)

    def embed_block_filtrations(self, filts, lo, hi):
        """Block-diagonal filtration from per-weight block filtrations."""
        n = self.n
        steps = {}
        for p in range(lo, hi + 2):
            vecs = []
            for w, (a, b) in self.blocks.items():
                for v in filts[w][p].basis:
                    u = [_ZERO] * n
                    u[a:b] = v
                    vecs.append(u)
            steps[p] = Subspace(n, vecs)
        return DecreasingFiltration(n, steps)


def _unit(n, j):
    return [_ONE if i == j else _ZERO for i in range(n)]


def filtration_from_weights(n, weights):
    """Increasing filtration on coordinates with the given per-coordinate weights."""
    steps = {min(weights) - 1: Subspace(n)}
    for w in sorted(set(weights)):
        steps[w] = Subspace(n, [_unit(n, j) for j in range(n) if weights[j] <= w])
    return IncreasingFiltration(n, steps)
