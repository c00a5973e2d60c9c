"""Fixed Hodge data and points of the period domain."""
from __future__ import annotations

from fractions import Fraction

from ..algebra.matrix import Matrix
from ..algebra.scalars import GaussianRational, conj, format_scalar, normalize, parse_scalar
from ..algebra.subspace import DecreasingFiltration, IncreasingFiltration, Subspace
from .basis import AdaptedBasis


class ValidationError(ValueError):
    """Input violates a stated precondition; the message names the condition."""


class UnsupportedDepth(ValueError):
    """Weight span beyond what the implemented truncations cover."""


_I = GaussianRational(0, 1)


def i_power(k):
    return [Fraction(1), _I, Fraction(-1), -_I][k % 4]


class HodgeData:
    """Rank, rational W, graded pairings and Hodge numbers.

    ``pairings[w]`` is a matrix in the graded basis of the adapted basis
    block of weight w.
    """

    def __init__(self, W, pairings, hodge_numbers, basis=None):
        if not W.is_real():
            raise ValidationError("W must be rational")
        self.W = W
        self.n = W.n
        self.basis = basis if basis is not None else AdaptedBasis.canonical(W)
        self.pairings = {int(w): m for w, m in pairings.items()}
        self.hodge_numbers = {(int(p), int(q)): int(h) for (p, q), h in hodge_numbers.items() if h}
        self._validate()

    def _validate(self):
        hn = self.hodge_numbers
        if sum(hn.values()) != self.n:
            raise ValidationError("sum of Hodge numbers differs from the rank")
        for (p, q), h in hn.items():
            if hn.get((q, p), 0) != h:
                raise ValidationError(f"h^{{{p},{q}}} != h^{{{q},{p}}}")
        for w in self.W.weights():
            d = sum(h for (p, q), h in hn.items() if p + q == w)
            if d != self.W.gr_dim(w):
                raise ValidationError(f"Hodge numbers of weight {w} do not match dim gr_{w}")
        for (p, q) in hn:
            if self.W.gr_dim(p + q) == 0:
                raise ValidationError(f"Hodge number at ({p},{q}) in a zero graded piece")
        for w in self.W.weights():
            m = self.pairings.get(w)
            k = self.W.gr_dim(w)
            if m is None:
                raise ValidationError(f"missing pairing on gr_{w}")
            if m.shape != (k, k):
                raise ValidationError(f"pairing on gr_{w} has wrong size")
            if not m.is_real():
                raise ValidationError(f"pairing on gr_{w} must be rational")
            sign = 1 if w % 2 == 0 else -1
            if m.T != m.scale(sign):
                raise ValidationError(
                    f"pairing on gr_{w} must be {'symmetric' if sign == 1 else 'antisymmetric'}"
                )
            if m.det() == 0:
                raise ValidationError(f"pairing on gr_{w} is degenerate")

    def hodge_range(self):
        ps = [p for (p, q) in self.hodge_numbers]
        return min(ps), max(ps)

    def block_pairing(self, w):
        return self.pairings[w]

    # JSON
    @classmethod
    def from_json(cls, obj):
        W, basis = weight_filtration_from_json(obj)
        pairings = {int(w): Matrix.parse(m) for w, m in obj["pairings"].items()}
        hn = {}
        for key, h in obj["hodge_numbers"].items():
            p, q = key.split(",")
            hn[(int(p), int(q))] = int(h)
        return cls(W, pairings, hn, basis=basis)

    def to_json(self):
        out_w = {}
        for w in self.W.weights():
            out_w[str(w)] = [[format_scalar(x) for x in v] for v in self.W[w].basis]
        return {
            "rank": self.n,
            "W": out_w,
            "pairings": {str(w): m.to_strings() for w, m in sorted(self.pairings.items())},
            "hodge_numbers": {f"{p},{q}": h for (p, q), h in sorted(self.hodge_numbers.items())},
        }


class MhsPoint:
    """A point F of the compact dual, with lazily computed membership flags."""

    def __init__(self, data, F):
        if F.n != data.n:
            raise ValidationError("F has the wrong ambient dimension")
        self.data = data
        self.F = F
        self._coords = None
        self._flags = {}

    @classmethod
    def from_vectors(cls, data, F_spans):
        n = data.n
        steps = {}
        for p, vecs in F_spans.items():
            steps[int(p)] = Subspace(n, vecs)
        lo = min(steps)
        if steps[lo].dim != n:
            steps[lo - 1] = Subspace.full(n)
        steps.setdefault(max(steps) + 1, Subspace(n))
        try:
            F = DecreasingFiltration(n, steps)
        except ValueError as e:
            raise ValidationError(str(e)) from None
        return cls(data, F)

    @classmethod
    def from_json(cls, obj, data=None):
        data = data or HodgeData.from_json(obj)
        spans = {}
        for p, vecs in obj["F"].items():
            spans[int(p)] = [[parse_scalar(x) for x in v] for v in vecs]
        return cls.from_vectors(data, spans)

    def to_json(self):
        out = self.data.to_json()
        out["F"] = {
            str(p): [[format_scalar(x) for x in v] for v in self.F[p].basis]
            for p in range(self.F.lo, self.F.hi + 1)
        }
        return out

    @property
    def coords(self):
        """F in adapted coordinates."""
        if self._coords is None:
            self._coords = self.data.basis.filt_to(self.F)
        return self._coords

    def graded_blocks(self):
        b = self.data.basis
        return {w: b.block_filtration(self.coords, w) for w in b.weight_list()}

    # membership
    def check_dcheck(self):
        """Raise ValidationError naming the first failed condition."""
        data = self.data
        blocks = self.graded_blocks()
        for w, Fw in blocks.items():
            for p in range(Fw.lo - 1, Fw.hi + 2):
                d = Fw[p].dim - Fw[p + 1].dim
                if d != data.hodge_numbers.get((p, w - p), 0):
                    raise ValidationError(
                        f"dimension count: dim F^{p}/F^{p+1} on gr_{w} is {d}, "
                        f"expected h^{{{p},{w - p}}}={data.hodge_numbers.get((p, w - p), 0)}"
                    )
        for w, Fw in blocks.items():
            S = data.pairings[w]
            for p in range(Fw.lo, Fw.hi + 1):
                A = Fw[p]
                B = Fw[w - p + 1]
                for u in A.basis:
                    Su = S.T.apply(list(u))
                    for v in B.basis:
                        if sum((x * y for x, y in zip(Su, v)), Fraction(0)) != 0:
                            raise ValidationError(
                                f"isotropy: F^{p} and F^{w - p + 1} on gr_{w} are not orthogonal"
                            )

    def check_mhs(self):
        self.check_dcheck()
        for w, Fw in self.graded_blocks().items():
            if not is_pure_hs(Fw, w):
                raise ValidationError(f"bigrading: F on gr_{w} is not a pure Hodge structure of weight {w}")

    def check_d(self):
        self.check_mhs()
        for w, Fw in self.graded_blocks().items():
            S = self.data.pairings[w]
            for p in range(Fw.lo, Fw.hi + 1):
                q = w - p
                H = Fw[p] & Fw.conjugate()[q]
                vecs = [list(v) for v in H.basis]
                if not vecs:
                    continue
                c = i_power(p - q)
                G = [
                    [normalize(c * _bilinear(S, u, [conj(x) for x in v])) for v in vecs]
                    for u in vecs
                ]
                for k in range(1, len(vecs) + 1):
                    m = Matrix([r[:k] for r in G[:k]], k).det()
                    mr = m.re if isinstance(m, GaussianRational) else m
                    if isinstance(m, GaussianRational) and m.im != 0:
                        raise ValidationError(f"positivity: Hermitian form on H^{{{p},{q}}} is not Hermitian")
                    if mr <= 0:
                        raise ValidationError(
                            f"positivity: polarization not positive definite on H^{{{p},{q}}} of gr_{w}"
                        )

    def _flag(self, name, fn):
        if name not in self._flags:
            try:
                fn()
                self._flags[name] = None
            except ValidationError as e:
                self._flags[name] = str(e)
        return self._flags[name] is None

    @property
    def is_in_Dcheck(self):
        return self._flag("dcheck", self.check_dcheck)

    @property
    def is_mhs(self):
        return self._flag("mhs", self.check_mhs)

    @property
    def is_in_D(self):
        return self._flag("d", self.check_d)

    def failure(self, which="d"):
        getattr(self, {"d": "is_in_D", "mhs": "is_mhs", "dcheck": "is_in_Dcheck"}[which])
        return self._flags.get(which)

    def transform(self, g):
        """g . F for g acting on H (original coordinates)."""
        return MhsPoint(self.data, self.F.image(g))


def _bilinear(S, u, v):
    Sv = S.apply(list(v))
    return sum((x * y for x, y in zip(u, Sv)), Fraction(0))


def is_pure_hs(Fw, w):
    n = Fw.n
    Fb = Fw.conjugate()
    for p in range(Fw.lo, Fw.hi + 2):
        A = Fw[p]
        B = Fb[w - p + 1]
        if A.dim + B.dim != n or (A + B).dim != n:
            return False
    return True


def weight_filtration_from_json(obj):
    """(W, adapted basis) from {"rank": n, "W": {k: [vectors]}}."""
    n = int(obj["rank"])
    spanning = {}
    steps = {}
    for k, vecs in obj["W"].items():
        vs = [[parse_scalar(x) for x in v] for v in vecs]
        for v in vs:
            if len(v) != n:
                raise ValidationError(f"W_{k} vector has wrong length")
        spanning[int(k)] = vs
        steps[int(k)] = Subspace(n, vs)
    steps.setdefault(min(steps) - 1, Subspace(n))
    try:
        W = IncreasingFiltration(n, steps)
    except ValueError as e:
        raise ValidationError(str(e)) from None
    # greedy graded basis from listed vectors, interpolating missing steps
    span_full = {}
    for w in W.weights():
        keys = [k for k in spanning if k <= w]
        span_full[w] = spanning[max(keys)] if keys else []
    basis = AdaptedBasis.from_spanning(W, span_full)
    return W, basis
