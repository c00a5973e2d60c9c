"""Ratio points, lexicographic valuations and charts on N^n.

Monoid elements are integer vectors (additive notation); the identity is
the zero vector.  Values in [0, inf] are Fractions or ``INF``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..algebra.matrix import Matrix, solve_linear
from ..algebra.scalars import format_scalar, parse_scalar
from ..algebra.subspace import Subspace
from .monoid import FsMonoid, MonoidError

INF = float("inf")


class RatioError(ValueError):
    pass


def _dot(a, b):
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def ext_mul(x, y):
    if (x == 0 and y == INF) or (x == INF and y == 0):
        raise RatioError("0 * inf is undefined")
    if x == INF or y == INF:
        return INF
    return x * y


def ext_inv(x):
    if x == 0:
        return INF
    if x == INF:
        return Fraction(0)
    return 1 / x


def ext_div(x, y):
    if y == 0:
        if x == 0:
            raise RatioError("0 / 0 is undefined")
        return INF
    if x == INF:
        if y == INF:
            raise RatioError("inf / inf is undefined")
        return INF
    if y == INF:
        return Fraction(0)
    return Fraction(x) / Fraction(y)


def format_ext(x):
    return "inf" if x == INF else format_scalar(Fraction(x))


def parse_ext(s):
    return INF if s in ("inf", "oo", "∞") else parse_scalar(s)


@dataclass(frozen=True)
class RatioPoint:
    """Flag of faces S = S^(0) > ... > S^(n) = {1} with normalized functionals.

    ``flag[j]`` is the generator index set of S^(j); ``functionals[j-1]`` is
    N_j, stored as the unique vector in span(S^(j-1)) representing it under
    the dot product, normalized by N_j(q_j) = 1 at ``markers[j-1]``.
    """

    monoid: FsMonoid
    flag: tuple
    functionals: tuple
    markers: tuple

    def depth(self, f):
        """Largest j with f in S^(j)."""
        j = 0
        for k, face in enumerate(self.flag):
            if _in_span(self.monoid, face, f):
                j = k
        return j

    def __eq__(self, other):
        return (
            isinstance(other, RatioPoint)
            and self.flag == other.flag
            and self.functionals == other.functionals
            and self.markers == other.markers
        )

    def __hash__(self):
        return hash((self.flag, self.functionals, self.markers))

    @property
    def length(self):
        return len(self.flag) - 1

    def to_json(self):
        return {
            "flag": [sorted(f) for f in self.flag],
            "functionals": [[format_scalar(x) for x in v] for v in self.functionals],
            "markers": list(self.markers),
        }

    @classmethod
    def from_json(cls, monoid, obj):
        flag = [frozenset(f) for f in obj["flag"]]
        funcs = [[parse_scalar(x) for x in v] for v in obj["functionals"]]
        return make_ratio_point(monoid, flag, funcs)


def _in_span(monoid, face, f):
    if all(x == 0 for x in f):
        return True
    return Subspace(monoid.m, [[Fraction(x) for x in monoid.generators[i]] for i in face]).contains(
        [Fraction(x) for x in f]
    )


def _canonical_functional(monoid, face, values):
    """Vector v in span(face generators) with v.g_i = values[i] for i in face."""
    idx = sorted(face)
    gens = [[Fraction(x) for x in monoid.generators[i]] for i in idx]
    basis = Subspace(monoid.m, gens).vectors()
    # v = sum c_k basis_k ; constraints g_i . v = values[i]
    A = Matrix([[_dot(g, b) for b in basis] for g in gens], len(basis))
    sol = solve_linear(A, [Fraction(values[i]) for i in idx])
    if sol is None:
        return None
    c = sol[0]
    return tuple(sum((ck * b[k] for ck, b in zip(c, basis)), Fraction(0)) for k in range(monoid.m))


def make_ratio_point(monoid, flag, functionals):
    """Validate a flag/functional datum and normalize it."""
    flag = [frozenset(f) for f in flag]
    faces = {f.gens for f in monoid.faces()}
    allg = frozenset(range(len(monoid.generators)))
    if not flag or flag[0] != allg or flag[-1] != frozenset():
        raise RatioError("flag must start at the whole monoid and end at {1}")
    for f in flag:
        if f not in faces:
            raise RatioError(f"generator set {sorted(f)} is not a face")
    for a, b in zip(flag, flag[1:]):
        if not b < a:
            raise RatioError("flag must be strictly decreasing")
    if len(functionals) != len(flag) - 1:
        raise RatioError("need one functional per flag step")
    funcs, markers = [], []
    for j in range(1, len(flag)):
        big, small = flag[j - 1], flag[j]
        lam = [Fraction(x) for x in functionals[j - 1]]
        vals = {i: _dot(lam, monoid.generators[i]) for i in big}
        for i in small:
            if vals[i] != 0:
                raise RatioError(f"N_{j} does not kill S^({j})")
        for i in big - small:
            if vals[i] <= 0:
                raise RatioError(f"N_{j} is not positive on S^({j - 1}) minus S^({j})")
        q = min(big - small)
        scale = vals[q]
        vals = {i: v / scale for i, v in vals.items()}
        funcs.append(_canonical_functional(monoid, big, vals))
        markers.append(q)
    return RatioPoint(monoid, tuple(flag), tuple(funcs), tuple(markers))


def ratio_to_pair_map(p, f, g):
    """r(f, g) for the point p.

    Deeper elements are smaller in the log scale: if f lies strictly deeper
    in the flag than g then r(f, g) = 0, and if g is deeper, r(f, g) = inf.
    """
    m = p.monoid
    for x in (f, g):
        if len(x) != m.m or not m.contains(x):
            raise RatioError(f"{list(x)} is not in the monoid")
    n = p.length
    j, k = p.depth(f), p.depth(g)
    if j == n and k == n:
        raise RatioError("r(1, 1) is not defined")
    if j == k:
        N = p.functionals[j]
        return _dot(N, f) / _dot(N, g)
    return Fraction(0) if j > k else INF


def pair_map(p):
    return lambda f, g: ratio_to_pair_map(p, f, g)


def _elements(monoid):
    return [tuple(g) for g in monoid.generators]


def check_pair_map_axioms(monoid, r):
    """Raise RatioError naming the first failed axiom on generator tuples."""
    gens = _elements(monoid)
    zero = tuple([0] * monoid.m)
    for f in gens:
        if r(f, f) != 1:
            raise RatioError("axiom (i) failed: r(f, f) != 1")
        if r(zero, f) != 0 or r(f, zero) != INF:
            raise RatioError("axiom (iii) failed: r(1, f) must be 0")
    for f, g in itertools.product(gens, repeat=2):
        if r(g, f) != ext_inv(r(f, g)):
            raise RatioError(f"axiom (i) failed at {f}, {g}")
    for f, g, h in itertools.product(gens, repeat=3):
        a, b = r(f, g), r(g, h)
        if {a, b} != {0, INF} and ext_mul(a, b) != r(f, h):
            raise RatioError(f"axiom (ii) failed at {f}, {g}, {h}")
        fg = tuple(x + y for x, y in zip(f, g))
        lhs = r(fg, h)
        ra, rb = r(f, h), r(g, h)
        rhs = INF if INF in (ra, rb) else ra + rb
        if lhs != rhs:
            raise RatioError(f"axiom (iii) failed at {f}, {g}, {h}")


def ratio_from_pair_map(monoid, r, check=True):
    """The flag/functional datum of a pair map, by the face construction."""
    if check:
        check_pair_map_axioms(monoid, r)
    gens = _elements(monoid)
    idx = range(len(gens))
    faces = set()
    for f in gens:
        faces.add(frozenset(i for i in idx if r(gens[i], f) != INF))
    faces.add(frozenset())
    flag = sorted(faces, key=len, reverse=True)
    for a, b in zip(flag, flag[1:]):
        if not b < a:
            raise RatioError("faces S(r, f) are not totally ordered")
    known = {f.gens for f in monoid.faces()}
    for f in flag:
        if f not in known:
            raise RatioError(f"S(r, f) = {sorted(f)} is not a face; axiom (iii) must fail")
    funcs = []
    for j in range(1, len(flag)):
        big, small = flag[j - 1], flag[j]
        q = min(big - small)
        vals = {i: r(gens[i], gens[q]) for i in big}
        if any(v == INF for v in vals.values()):
            raise RatioError("axiom (ii) failed: infinite value inside a face")
        lam = _canonical_functional(monoid, big, vals)
        if lam is None:
            raise RatioError("axiom (iii) failed: values are not additive on the face")
        funcs.append(lam)
    return make_ratio_point(monoid, flag, funcs)


class LexValuation:
    """V = {a : (lambda_1(a), ..., lambda_r(a)) >= 0 lexicographically}."""

    def __init__(self, monoid, functionals):
        self.monoid = monoid
        self.functionals = tuple(tuple(Fraction(x) for x in lam) for lam in functionals)
        for lam in self.functionals:
            if len(lam) != monoid.m:
                raise RatioError("functional of wrong length")
        for g in monoid.generators:
            if self.sign(g) <= 0:
                raise RatioError(f"generator {g} is not lexicographically positive")

    def values(self, a):
        return [_dot(lam, a) for lam in self.functionals]

    def sign(self, a):
        for v in self.values(a):
            if v != 0:
                return 1 if v > 0 else -1
        return 0

    def contains(self, a):
        return self.sign(a) >= 0

    def ratio(self, f, g):
        """r_V(f, g) read off at the first functional nonzero on f or g."""
        if all(x == 0 for x in f) and all(x == 0 for x in g):
            raise RatioError("r(1, 1) is not defined")
        for lam in self.functionals:
            a, b = _dot(lam, f), _dot(lam, g)
            if a == 0 and b == 0:
                continue
            if b == 0:
                return INF
            if a == 0:
                return Fraction(0)
            return a / b
        raise RatioError("valuation does not separate f, g from 1")

    def to_json(self):
        return {"functionals": [[format_scalar(x) for x in lam] for lam in self.functionals]}


def valuation_to_ratio(V):
    return ratio_from_pair_map(V.monoid, V.ratio, check=False)


def ratio_lift_valuation(p):
    """A lexicographic valuation mapping to p: [N_1, lambda_1..., N_2, ...]."""
    m = p.monoid
    dim = m.m
    funcs = []
    for j in range(1, len(p.flag)):
        big, small = p.flag[j - 1], p.flag[j]
        N = list(p.functionals[j - 1])
        funcs.append(tuple(N))
        span_big = Subspace(dim, [[Fraction(x) for x in m.generators[i]] for i in big])
        span_small = Subspace(dim, [[Fraction(x) for x in m.generators[i]] for i in small])
        Q = span_big & Subspace(dim, Matrix([N], dim).nullspace())
        comp = []
        acc = span_small
        for v in Q.basis:
            if not acc.contains(v):
                comp.append(list(v))
                acc = acc + Subspace(dim, [v])
        if not comp:
            continue
        # lambda vanishes on S^(j), dual basis on comp, zero on a complement of Q
        rest = []
        acc2 = acc
        for k in range(dim):
            e = [Fraction(int(i == k)) for i in range(dim)]
            if not acc2.contains(e):
                rest.append(e)
                acc2 = acc2 + Subspace(dim, [e])
        rows = span_small.vectors() + comp + rest
        A = Matrix(rows, dim)
        Ainv = A.inverse()
        ns = len(span_small.vectors())
        for t in range(len(comp)):
            # functional with value 1 on comp[t], 0 on other rows: column of A^{-1}
            funcs.append(tuple(Ainv.column(ns + t)))
    return LexValuation(m, funcs)


def sup_inf_brackets(V, f, g, D, amax=None):
    """Bounded search for sup{a/b : f^b/g^a in V} and inf{a/b : g^a/f^b in V}.

    Over 1 <= b <= D, 0 <= a <= amax.  Returns (L, U) with U = INF when no
    admissible a exists.  Independent of the first-separating-functional rule.
    """
    from math import lcm

    from ..kernels import lex_brackets

    lf, lg = [], []
    for lam in V.functionals:
        x, y = _dot(lam, f), _dot(lam, g)
        m = lcm(x.denominator, y.denominator)
        lf.append(int(x * m))
        lg.append(int(y * m))
    amax = 64 * D if amax is None else amax
    Ln, Ld, hasU, Un, Ud = lex_brackets(lf, lg, D, amax)
    return Fraction(Ln, Ld), (Fraction(Un, Ud) if hasU else INF)


# charts on N^n

def chart_Nn(p, perm):
    """Coordinates t_j = r(q_{j+1}, q_j) in the chart of the maximal flag ``perm``.

    ``perm`` lists generator indices; the flag is S^(j) = <q_perm[j], ...>.
    """
    m = p.monoid
    n = len(m.generators)
    if sorted(perm) != list(range(n)):
        raise RatioError("perm must be a permutation of the generator indices")
    phi = [frozenset(perm[j:]) for j in range(n + 1)]
    for face in p.flag:
        if face not in phi:
            raise RatioError(f"point is outside the chart: face {sorted(face)} is not in the flag")
    q = [tuple(m.generators[i]) for i in perm]
    return [ratio_to_pair_map(p, q[j + 1], q[j]) for j in range(n - 1)]


def chart_Nn_inverse(monoid, perm, t):
    n = len(monoid.generators)
    if len(t) != n - 1:
        raise RatioError("need n-1 coordinates")
    t = [Fraction(x) for x in t]
    if any(x < 0 for x in t):
        raise RatioError("chart coordinates must be >= 0")
    starts = [0] + [j + 1 for j in range(n - 1) if t[j] == 0]
    flag = [frozenset(perm[s:]) for s in starts] + [frozenset()]
    funcs = []
    for bi, s in enumerate(starts):
        e = starts[bi + 1] if bi + 1 < len(starts) else n
        vals = {}
        prod = Fraction(1)
        for k in range(s, e):
            if k > s:
                prod *= t[k - 1]
            vals[perm[k]] = prod
        lam = [Fraction(0)] * monoid.m
        for i, v in vals.items():
            g = monoid.generators[i]
            k = next(c for c, x in enumerate(g) if x != 0)
            lam[k] = v / g[k]
        funcs.append(lam)
    return make_ratio_point(monoid, flag, funcs)


def random_ratio_point(monoid, rng, maxnum=9):
    """Random flag through the face lattice with random positive functionals."""
    faces = monoid.faces()
    flag = [frozenset(range(len(monoid.generators)))]
    while flag[-1]:
        cur = flag[-1]
        subs = [f.gens for f in faces if f.gens < cur]
        nxt = rng.choice(subs)
        flag.append(nxt)
    facets = monoid._facets()
    funcs = []
    for j in range(1, len(flag)):
        big, small = flag[j - 1], flag[j]
        normals = [f.normal for f in facets if small <= f.gens] or [monoid.face_of(small).normal]
        lam = [Fraction(0)] * monoid.m
        for nm in normals:
            c = Fraction(rng.randint(1, maxnum), rng.randint(1, maxnum))
            lam = [a + c * b for a, b in zip(lam, nm)]
        funcs.append(lam)
    return make_ratio_point(monoid, flag, funcs)
