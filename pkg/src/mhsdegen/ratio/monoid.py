"""Finitely generated saturated monoids in Z^m and their faces."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..algebra.matrix import Matrix
from ..algebra.subspace import Subspace


class MonoidError(ValueError):
    pass


def _dot(a, b):
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class Face:
    """A face given by generator indices and a supporting functional.

    ``normal`` is >= 0 on all generators and vanishes exactly on the face.
    """

    gens: frozenset
    normal: tuple

    def __contains__(self, i):
        return i in self.gens


class FsMonoid:
    def __init__(self, generators, check_saturated=True):
        gens = [tuple(int(x) for x in g) for g in generators]
        if not gens:
            raise MonoidError("monoid needs at least one generator")
        m = len(gens[0])
        if any(len(g) != m for g in gens):
            raise MonoidError("generators have different lengths")
        if any(all(x == 0 for x in g) for g in gens):
            raise MonoidError("zero generator")
        self.m = m
        self.generators = gens
        self.span = Subspace(m, [[Fraction(x) for x in g] for g in gens])
        self.rank = self.span.dim
        self._faces = None
        self._sharp = None
        if check_saturated and self.rank == m and self.is_sharp:
            missing = [h for h in self.hilbert_basis() if not self._generated(h)]
            if missing:
                raise MonoidError(f"not saturated: {missing[0]} lies in the cone but not in the monoid")

    @classmethod
    def free(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], check_saturated=False)

    @classmethod
    def from_json(cls, obj):
        return cls(obj["generators"])

    def to_json(self):
        return {"ambient_rank": self.m, "generators": [list(g) for g in self.generators]}

    # facets and faces
    def _facets(self):
        """Supporting normals of facets, as functionals on the span."""
        d = self.rank
        gens = self.generators
        if d == 0:
            return []
        span_ann = self.span.annihilator()
        seen = {}
        for sub in itertools.combinations(range(len(gens)), d - 1) if d > 1 else [()]:
            H = Subspace(self.m, [[Fraction(x) for x in gens[i]] for i in sub])
            if H.dim != d - 1:
                continue
            rows = [list(map(Fraction, gens[i])) for i in sub] + span_ann
            ns = Matrix(rows, self.m).nullspace() if rows else Matrix.identity(self.m).columns()
            ns = [v for v in ns if any(_dot(v, g) != 0 for g in gens)]
            if len(ns) != 1:
                continue
            v = ns[0]
            vals = [_dot(v, g) for g in gens]
            if all(x >= 0 for x in vals):
                pass
            elif all(x <= 0 for x in vals):
                v = [-x for x in v]
                vals = [-x for x in vals]
            else:
                continue
            zero = frozenset(i for i, x in enumerate(vals) if x == 0)
            if zero not in seen:
                seen[zero] = tuple(_integral(v))
        return [Face(z, n) for z, n in seen.items()]

    @property
    def is_sharp(self):
        if self._sharp is None:
            facets = self._facets()
            if not facets:
                self._sharp = self.rank <= 1 and len(self.generators) >= 1 and self._ray_sharp()
            else:
                total = [sum(f.normal[k] for f in facets) for k in range(self.m)]
                self._sharp = all(_dot(total, g) > 0 for g in self.generators)
        return self._sharp

    def _ray_sharp(self):
        g0 = self.generators[0]
        k = next(i for i, x in enumerate(g0) if x != 0)
        return all((g[k] > 0) == (g0[k] > 0) for g in self.generators)

    def faces(self):
        if self._faces is not None:
            return self._faces
        if not self.is_sharp:
            raise MonoidError("monoid is not sharp: face enumeration needs units = {0}")
        allgens = frozenset(range(len(self.generators)))
        if self.rank == 1:
            g0 = self.generators[0]
            k = next(i for i, x in enumerate(g0) if x != 0)
            normal = [0] * self.m
            normal[k] = 1 if g0[k] > 0 else -1
            faces = {allgens: tuple([0] * self.m), frozenset(): tuple(normal)}
        else:
            facets = self._facets()
            faces = {allgens: tuple([0] * self.m)}
            frontier = {f.gens: f.normal for f in facets}
            faces.update(frontier)
            while frontier:
                new = {}
                for g1, n1 in frontier.items():
                    for f in facets:
                        g = g1 & f.gens
                        if g not in faces and g not in new:
                            new[g] = tuple(a + b for a, b in zip(n1, f.normal))
                faces.update(new)
                frontier = new
        self._faces = sorted(
            (Face(g, n) for g, n in faces.items()), key=lambda f: (-len(f.gens), sorted(f.gens))
        )
        return self._faces

    def face_of(self, gens):
        gens = frozenset(gens)
        for f in self.faces():
            if f.gens == gens:
                return f
        raise MonoidError(f"generator set {sorted(gens)} is not a face")

    def face_span(self, face):
        return Subspace(self.m, [[Fraction(x) for x in self.generators[i]] for i in face.gens])

    def in_face(self, f, face):
        """Is the monoid element f in the face?"""
        return _dot(face.normal, f) == 0

    def contains(self, f):
        """Membership in the saturated monoid: f in the cone and the group."""
        if not self.span.contains([Fraction(x) for x in f]):
            return False
        return all(_dot(fc.normal, f) >= 0 for fc in self.faces())

    def _generated(self, h):
        """Brute force: h is an N-combination of the generators."""
        gens = self.generators
        bound = max(abs(x) for x in h) + 1
        target = tuple(h)

        def rec(i, rem):
            if all(x == 0 for x in rem):
                return True
            if i == len(gens):
                return False
            g = gens[i]
            for c in range(bound + 1):
                r = tuple(a - c * b for a, b in zip(rem, g))
                if rec(i + 1, r):
                    return True
                if any(abs(x) > 4 * bound * max(1, max(abs(y) for y in g)) for x in r):
                    break
            return False

        return rec(0, target)

    def hilbert_basis(self):
        """Irreducible elements of cone cap Z^m, by a box search (full-rank cones).

        Irreducibles lie in the zonotope of the generators, so the box with
        half-width sum_i max|g_i| contains them all.
        """
        facets = [f.normal for f in self._facets()]
        B = sum(max(abs(x) for x in g) for g in self.generators)
        box = range(-B, B + 1)
        inside = lambda v: all(sum(a * b for a, b in zip(nm, v)) >= 0 for nm in facets)
        pts = [v for v in itertools.product(box, repeat=self.m) if any(v) and inside(v)]
        ptset = set(pts)
        irred = []
        for v in pts:
            if not any(tuple(a - b for a, b in zip(v, u)) in ptset for u in pts if u != v):
                irred.append(v)
        return sorted(irred)


def dual_cone_monoid(rays):
    """S(sigma) = sigma^vee cap Z^m for a full-dimensional rational cone sigma."""
    m = len(rays[0])
    cone = FsMonoid(rays, check_saturated=False)
    normals = [f.normal for f in cone._facets()]
    dual = FsMonoid(normals, check_saturated=False)
    return FsMonoid(dual.hilbert_basis())


def _integral(v):
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints] if g else ints
