"""Subspaces in canonical reduced row-echelon form, and filtrations."""
from __future__ import annotations

from fractions import Fraction

from .matrix import DimensionError, Matrix, nullspace, rref
from .scalars import conj, is_real

_ZERO = Fraction(0)


class Subspace:
    """Row span of a reduced row-echelon basis.

    Two equal subspaces have identical ``basis`` tuples, so equality and
    hashing are syntactic.
    """

    __slots__ = ("n", "basis", "pivots")

    def __init__(self, n, vectors=()):
        self.n = n
        rows = []
        for v in vectors:
            v = list(v)
            if len(v) != n:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
            rows.append(v)
        if rows:
            red, piv = rref(rows)
            self.basis = tuple(tuple(r) for r in red[: len(piv)])
            self.pivots = tuple(piv)
        else:
            self.basis = ()
            self.pivots = ()

    @classmethod
    def full(cls, n):
        s = cls(n)
        one = Fraction(1)
        s.basis = tuple(tuple(one if i == j else _ZERO for j in range(n)) for i in range(n))
        s.pivots = tuple(range(n))
        return s

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def from_matrix_columns(cls, m):
        return cls(m.nrows, m.columns())

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return self.dim

    def vectors(self):
        return [list(r) for r in self.basis]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"

    def _check(self, other):
        if self.n != other.n:
            raise DimensionError(f"ambient mismatch {self.n} vs {other.n}")

    def is_real(self):
        return all(is_real(x) for r in self.basis for x in r)

    def __add__(self, other):
        self._check(other)
        return Subspace(self.n, list(self.basis) + list(other.basis))

    def annihilator(self):
        """Row vectors a with a.v = 0 for all v in the subspace."""
        return nullspace([list(r) for r in self.basis], self.n)

    def __and__(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.n)
        if self.dim == self.n:
            return other
        if other.dim == self.n:
            return self
        return Subspace(self.n, nullspace(self.annihilator() + other.annihilator(), self.n))

    intersection = __and__

    def contains(self, v):
        v = list(v)
        if len(v) != self.n:
            raise DimensionError("vector length mismatch")
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f != 0:
                w = [a - f * b for a, b in zip(w, row)]
        return all(x == 0 for x in w)

    def reduce(self, v):
        """Canonical representative of v modulo the subspace."""
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f != 0:
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def __contains__(self, v):
        return self.contains(v)

    def issubspace(self, other):
        self._check(other)
        return all(other.contains(r) for r in self.basis)

    __le__ = issubspace

    def conjugate(self):
        return Subspace(self.n, [[conj(x) for x in r] for r in self.basis])

    def image(self, m):
        if m.ncols != self.n:
            raise DimensionError("image: matrix does not act on this ambient")
        return Subspace(m.nrows, [m.apply(list(r)) for r in self.basis])

    image_under = image

    def preimage(self, m):
        """{x : m x in self}."""
        if m.nrows != self.n:
            raise DimensionError("preimage: matrix target does not match ambient")
        ann = self.annihilator()
        if not ann:
            return Subspace.full(m.ncols)
        rows = Matrix(ann, self.n) @ m
        return Subspace(m.ncols, nullspace(rows.tolist(), m.ncols))

    def complement_coordinates(self):
        """Indices of standard basis vectors spanning a complement."""
        p = set(self.pivots)
        return [j for j in range(self.n) if j not in p]


def kernel(m):
    return Subspace(m.ncols, m.nullspace())


def image(m):
    return Subspace(m.nrows, m.columns())


class IncreasingFiltration:
    """W_k for integer k; stored as jumps between ``lo`` and ``hi``.

    W_k = 0 for k < lo and W_k = full for k >= hi.
    """

    __slots__ = ("n", "steps", "lo", "hi")

    def __init__(self, n, steps):
        self.n = n
        clean = {}
        for k, s in steps.items():
            if not isinstance(s, Subspace):
                s = Subspace(n, s)
            if s.n != n:
                raise DimensionError("filtration step in wrong ambient")
            clean[int(k)] = s
        if not clean:
            raise ValueError("filtration needs at least one step")
        keys = sorted(clean)
        prev = None
        for k in keys:
            s = clean[k]
            if prev is not None and not prev.issubspace(s):
                raise ValueError(f"increasing filtration is not monotone at {k}")
            prev = s
        if clean[keys[-1]].dim != n:
            raise ValueError("increasing filtration must be exhaustive at its top step")
        self.steps = clean
        lo = keys[0]
        while self[lo].dim == 0:
            lo += 1
        self.lo = lo
        hi = keys[-1]
        while hi - 1 >= lo and self[hi - 1].dim == n:
            hi -= 1
        self.hi = hi

    def __getitem__(self, k):
        s = self.steps
        if k in s:
            return s[k]
        below = [j for j in s if j <= k]
        if not below:
            return Subspace(self.n)
        return s[max(below)]

    def weights(self):
        """Weights w with gr_w nonzero."""
        return [k for k in range(self.lo, self.hi + 1) if self[k].dim > self[k - 1].dim]

    def gr_dim(self, k):
        return self[k].dim - self[k - 1].dim

    def is_real(self):
        return all(self[k].is_real() for k in range(self.lo, self.hi + 1))

    def __eq__(self, other):
        if not isinstance(other, IncreasingFiltration) or self.n != other.n:
            return False
        lo = min(self.lo, other.lo) - 1
        hi = max(self.hi, other.hi) + 1
        return all(self[k] == other[k] for k in range(lo, hi + 1))

    def __hash__(self):
        return hash((self.n, tuple((k, self[k]) for k in range(self.lo - 1, self.hi + 1))))

    def image(self, m):
        return IncreasingFiltration(self.n, {k: self[k].image(m) for k in range(self.lo - 1, self.hi + 1)})

    def shift(self, d):
        return IncreasingFiltration(self.n, {k + d: self[k] for k in range(self.lo - 1, self.hi + 1)})

    def as_dict(self):
        return {k: self[k] for k in range(self.lo - 1, self.hi + 1)}

    def __repr__(self):
        return f"IncreasingFiltration(n={self.n}, dims={ {k: self[k].dim for k in range(self.lo, self.hi + 1)} })"


class DecreasingFiltration:
    """F^p; F^p = full for p <= lo, 0 for p > hi."""

    __slots__ = ("n", "steps", "lo", "hi")

    def __init__(self, n, steps):
        self.n = n
        clean = {}
        for k, s in steps.items():
            if not isinstance(s, Subspace):
                s = Subspace(n, s)
            if s.n != n:
                raise DimensionError("filtration step in wrong ambient")
            clean[int(k)] = s
        if not clean:
            raise ValueError("filtration needs at least one step")
        keys = sorted(clean)
        for a, b in zip(keys, keys[1:]):
            if not clean[b].issubspace(clean[a]):
                raise ValueError(f"decreasing filtration is not monotone at {b}")
        if clean[keys[0]].dim != n:
            raise ValueError("decreasing filtration must be exhaustive at its bottom step")
        self.steps = clean
        lo = keys[0]
        while lo + 1 <= keys[-1] and self[lo + 1].dim == n:
            lo += 1
        hi = keys[-1]
        while hi >= lo and self[hi].dim == 0:
            hi -= 1
        self.lo = lo
        self.hi = hi

    def __getitem__(self, p):
        s = self.steps
        if p in s:
            return s[p]
        above = [j for j in s if j >= p]
        if not above:
            return Subspace(self.n)
        return s[min(above)]

    def __eq__(self, other):
        if not isinstance(other, DecreasingFiltration) or self.n != other.n:
            return False
        lo = min(self.lo, other.lo) - 1
        hi = max(self.hi, other.hi) + 1
        return all(self[p] == other[p] for p in range(lo, hi + 1))

    def __hash__(self):
        return hash((self.n, tuple((p, self[p]) for p in range(self.lo, self.hi + 2))))

    def image(self, m):
        return DecreasingFiltration(self.n, {p: self[p].image(m) for p in range(self.lo, self.hi + 2)})

    def conjugate(self):
        return DecreasingFiltration(self.n, {p: self[p].conjugate() for p in range(self.lo, self.hi + 2)})

    def as_dict(self):
        return {p: self[p] for p in range(self.lo, self.hi + 2)}

    def __repr__(self):
        return f"DecreasingFiltration(n={self.n}, dims={ {p: self[p].dim for p in range(self.lo, self.hi + 1)} })"
