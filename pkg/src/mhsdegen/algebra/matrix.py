"""Dense exact matrices over Q and Q(i).

Entries are Fraction or GaussianRational.  Matrices are immutable; the
row-reduction helpers work on private list copies.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational, conj, format_scalar, is_real, normalize, parse_scalar

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionError(ValueError):
    pass


class Matrix:
    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(normalize(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("empty matrix needs explicit ncols")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, rows, ncols):
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        m._hash = None
        return m

    # constructors
    @classmethod
    def zeros(cls, n, m=None):
        m = n if m is None else m
        return cls._raw([[_ZERO] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, n):
        return cls._raw([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, entries):
        n = len(entries)
        return cls._raw(
            [[normalize(entries[i]) if i == j else _ZERO for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = [list(c) for c in cols]
        if not cols:
            if nrows is None:
                raise DimensionError("empty column list needs nrows")
            return cls._raw([[] for _ in range(nrows)], 0)
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)], len(cols))

    @classmethod
    def parse(cls, rows):
        return cls([[parse_scalar(x) for x in r] for r in rows], len(rows[0]) if rows else 0)

    def to_strings(self):
        return [[format_scalar(x) for x in r] for r in self.rows]

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def tolist(self):
        return [list(r) for r in self.rows]

    def submatrix(self, rows, cols):
        return Matrix._raw([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    # comparison
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def is_real(self):
        return all(is_real(x) for r in self.rows for x in r)

    def is_square(self):
        return self.nrows == self.ncols

    # arithmetic
    def __add__(self, other):
        _same_shape(self, other)
        return Matrix._raw(
            [[normalize(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __sub__(self, other):
        _same_shape(self, other)
        return Matrix._raw(
            [[normalize(a - b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self):
        return Matrix._raw([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        c = normalize(c)
        return Matrix._raw([[normalize(c * a) for a in r] for r in self.rows], self.ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other):
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [() for _ in range(other.ncols)]
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a != 0]
            row = []
            for c in cols:
                s = _ZERO
                for k, a in nz:
                    b = c[k]
                    if b != 0:
                        s = s + a * b
                row.append(normalize(s))
            out.append(row)
        return Matrix._raw(out, other.ncols)

    def apply(self, v):
        if len(v) != self.ncols:
            raise DimensionError("vector length mismatch")
        out = []
        for r in self.rows:
            s = _ZERO
            for a, b in zip(r, v):
                if a != 0 and b != 0:
                    s = s + a * b
            out.append(normalize(s))
        return out

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def transpose(self):
        return Matrix._raw(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows
        )

    @property
    def T(self):
        return self.transpose()

    def conjugate(self):
        return Matrix._raw([[conj(a) for a in r] for r in self.rows], self.ncols)

    def real_part(self):
        from .scalars import re_part
        return Matrix._raw([[re_part(a) for a in r] for r in self.rows], self.ncols)

    def imag_part(self):
        from .scalars import im_part
        return Matrix._raw([[im_part(a) for a in r] for r in self.rows], self.ncols)

    def trace(self):
        s = _ZERO
        for i in range(min(self.nrows, self.ncols)):
            s = s + self.rows[i][i]
        return normalize(s)

    # reductions
    def rank(self):
        return len(rref(self.tolist())[1])

    def inverse(self):
        if not self.is_square():
            raise DimensionError("inverse of non-square matrix")
        n = self.nrows
        aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug, ncols_pivot=n)
        if len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw([r[n:] for r in red[:n]], n)

    def nullspace(self):
        """Basis of {x : Mx = 0} as a list of column vectors."""
        return nullspace(self.tolist(), self.ncols)

    def det(self):
        if not self.is_square():
            raise DimensionError("det of non-square matrix")
        m = self.tolist()
        n = self.nrows
        d = _ONE
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c] != 0), None)
            if p is None:
                return _ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            piv = m[c][c]
            d = d * piv
            inv = 1 / piv
            for r in range(c + 1, n):
                f = m[r][c]
                if f != 0:
                    f = f * inv
                    rr, rc = m[r], m[c]
                    for k in range(c, n):
                        if rc[k] != 0:
                            rr[k] = rr[k] - f * rc[k]
        return normalize(d)

    def is_nilpotent(self):
        return (self ** self.nrows).is_zero() if self.nrows else True

    def exp_nilpotent(self):
        """exp of a nilpotent matrix; raises if not nilpotent."""
        n = self.nrows
        out = Matrix.identity(n)
        term = Matrix.identity(n)
        for k in range(1, n + 1):
            term = (term @ self).scale(Fraction(1, k))
            if term.is_zero():
                return out
            out = out + term
        if not (term @ self).is_zero():
            raise ValueError("exp_nilpotent: matrix is not nilpotent")
        return out

    def log_unipotent(self):
        """log of a unipotent matrix; raises if not unipotent."""
        n = self.nrows
        x = self - Matrix.identity(n)
        out = Matrix.zeros(n)
        term = Matrix.identity(n)
        for k in range(1, n + 1):
            term = term @ x
            if term.is_zero():
                return out
            out = out + term.scale(Fraction((-1) ** (k + 1), k))
        if not (term @ x).is_zero():
            raise ValueError("log_unipotent: matrix is not unipotent")
        return out

    def __repr__(self):
        return f"Matrix({self.to_strings()!r})"


def _same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def commutator(a, b):
    return a @ b - b @ a


def block_diag(blocks):
    n = sum(b.nrows for b in blocks)
    out = [[_ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            for j, x in enumerate(r):
                out[off + i][off + j] = x
        off += b.nrows
    return Matrix._raw(out, n)


def rref(m, ncols_pivot=None):
    """Reduced row echelon form of a list-of-lists, in place.

    Pivots are sought only in the first ``ncols_pivot`` columns.  Returns
    ``(rows, pivots)`` with zero rows dropped beyond the rank only when the
    caller slices ``rows[:len(pivots)]``.
    """
    nrows = len(m)
    if nrows == 0:
        return m, []
    ncols = len(m[0])
    limit = ncols if ncols_pivot is None else ncols_pivot
    pivots = []
    r = 0
    for c in range(limit):
        if r >= nrows:
            break
        p = None
        for k in range(r, nrows):
            if m[k][c] != 0:
                p = k
                break
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        row = m[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            row = [normalize(x * inv) if x != 0 else _ZERO for x in row]
            m[r] = row
        nzc = [k for k in range(c, ncols) if row[k] != 0]
        for k in range(nrows):
            if k == r:
                continue
            other = m[k]
            f = other[c]
            if f != 0:
                for j in nzc:
                    other[j] = normalize(other[j] - f * row[j])
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(m, ncols):
    if not m:
        return [[_ONE if i == j else _ZERO for i in range(ncols)] for j in range(ncols)]
    red, piv = rref([list(r) for r in m])
    pivset = set(piv)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, pc in enumerate(piv):
            x = red[i][f]
            if x != 0:
                v[pc] = -x
        basis.append(v)
    return basis


def solve_linear(a, b):
    """Solve ``a x = b``.

    Returns ``(x, kernel)`` with ``x`` a particular solution (list) and
    ``kernel`` a list of basis vectors, or ``None`` when inconsistent.
    """
    if not isinstance(a, Matrix):
        raise TypeError("solve_linear expects a Matrix")
    b = [normalize(x) for x in b]
    if len(b) != a.nrows:
        raise DimensionError(f"rhs length {len(b)} does not match {a.nrows} rows")
    n = a.ncols
    aug = [list(r) + [bi] for r, bi in zip(a.rows, b)]
    if not aug:
        return [_ZERO] * n, nullspace([], n)
    red, piv = rref(aug, ncols_pivot=n)
    for r in red[len(piv):]:
        if r[n] != 0:
            return None
    x = [_ZERO] * n
    for i, pc in enumerate(piv):
        x[pc] = red[i][n]
    pivset = set(piv)
    kernel = []
    for f in range(n):
        if f in pivset:
            continue
        v = [_ZERO] * n
        v[f] = _ONE
        for i, pc in enumerate(piv):
            if red[i][f] != 0:
                v[pc] = -red[i][f]
        kernel.append(v)
    return x, kernel


def vec_add(u, v):
    return [normalize(a + b) for a, b in zip(u, v)]


def vec_sub(u, v):
    return [normalize(a - b) for a, b in zip(u, v)]


def vec_scale(c, v):
    return [normalize(c * a) for a in v]


def vec_is_zero(v):
    return all(x == 0 for x in v)


def vec_conj(v):
    return [conj(x) for x in v]


def unit_vector(n, i):
    return [_ONE if j == i else _ZERO for j in range(n)]


def as_gaussian(x):
    return GaussianRational.coerce(x)
