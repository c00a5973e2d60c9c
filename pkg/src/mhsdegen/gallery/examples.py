"""Coordinates of exp(iyN_a)F_b for Examples III and IV in each compactified space.

Coordinates are Laurent polynomials in t = 1/sqrt(y); limits t -> 0 are read off
from the leading exponents, never numerically.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

import sympy

from ..algebra.scalars import GaussianRational
from ..hodge.data import ValidationError
from ..hodge.mhs import delta_of, spl_W, x_gr
from . import models

I = GaussianRational(0, 1)
_0 = Fraction(0)

III_TAGS = ("standard", "weak_diamond", "diamond", "star", "star_val", "sl2", "sl2_val")
IV_TAGS = ("standard", "diamond", "star", "star_val", "sl2", "sl2_val")
VALUATIVE = ("star_val", "sl2_val")


class Laurent(dict):
    """{exponent of t: coefficient}, zero coefficients dropped."""

    @classmethod
    def mono(cls, c, e=0):
        c = Fraction(c)
        return cls({e: c} if c else {})

    def __add__(self, other):
        out = Laurent(self)
        for e, c in other.items():
            out[e] = out.get(e, _0) + c
            if not out[e]:
                del out[e]
        return out

    def shift(self, k):
        return Laurent({e + k: c for e, c in self.items()})

    def order(self):
        return min(self) if self else None

    def at(self, t):
        if not self:
            return _0
        if isinstance(t, Fraction):
            t = sympy.Rational(t.numerator, t.denominator)
        v = sum(sympy.Rational(c.numerator, c.denominator) * t**e for e, c in self.items())
        v = sympy.simplify(v)
        return Fraction(int(v.p), int(v.q)) if v.is_Rational else v

    def limit(self):
        """Value at t = 0, or None if some exponent is negative."""
        if self and self.order() < 0:
            return None
        return self.get(0, _0)


# valuative labels


@dataclass(frozen=True)
class ValuativeLabel:
    """A point of (R>=0 x Vbar)_val over t = 0.

    kind "point": the ordinary point (0, vec) with vec in V.
    kind "p": p(c, vec), p(c+, 0 o vec) or p(c-, 0 o vec); infinite marks 0 o vec in Vbar - V.
    """

    kind: str
    c: Fraction | None = None
    side: str = ""
    vec: tuple = ()
    infinite: bool = False
    names: tuple = ()

    def _vec_str(self):
        if len(self.vec) == 1 and not self.names:
            v = self.vec[0]
            if self.infinite:
                return "+inf" if v > 0 else "-inf"
            return str(v)
        terms = [f"{_coef(c)}{n}" for c, n in zip(self.vec, self.names) if c]
        body = "+".join(terms).replace("+-", "-") or "0"
        return f"0o({body})" if self.infinite else body

    def render(self):
        if self.kind == "point":
            return f"(0, {self._vec_str()})"
        return f"p({_coef_num(self.c)}{self.side}, {self._vec_str()})"

    def to_json(self):
        return {
            "kind": self.kind,
            "c": None if self.c is None else str(self.c),
            "side": self.side,
            "vec": [str(x) for x in self.vec],
            "infinite": self.infinite,
            "label": self.render(),
        }


def _coef(c):
    return "" if c == 1 else "-" if c == -1 else f"{c}"


def _coef_num(c):
    return str(c)


def valuative_shift(label, c0):
    """The map (t, delta) -> (t, t^c0 delta) extended to the valuative space.

    c0 = 3 is map (3) of Example III, c0 = 2 is map (1) of Example IV.
    """
    c0 = Fraction(c0)
    zero = ValuativeLabel("point", vec=tuple(_0 for _ in label.vec), names=label.names)
    if label.kind == "point":
        return zero
    c, side = label.c, label.side
    if c == 0 and side == "":
        return label
    if side == "":
        if c > c0:
            return ValuativeLabel("p", c - c0, "", label.vec, label.infinite, label.names)
        if c == c0:
            if label.infinite:
                raise ValidationError("valuative map: p(c0, lambda) needs lambda in V")
            return ValuativeLabel("point", vec=label.vec, names=label.names)
        return zero
    if side == "+":
        if c >= c0:
            return ValuativeLabel("p", c - c0, "+", label.vec, label.infinite, label.names)
        return zero
    if c > c0:
        return ValuativeLabel("p", c - c0, "-", label.vec, label.infinite, label.names)
    return zero


# per-example coordinate systems


@dataclass
class ExampleCoords:
    """Coordinates (t, delta, x, s) with each entry a Laurent polynomial in t."""

    example: str
    space: str
    delta: tuple
    x: Laurent
    s: tuple
    delta_names: tuple
    s_names: tuple

    def at(self, t):
        return {
            "t": t,
            "delta": [d.at(t) for d in self.delta],
            "x": self.x.at(t),
            "s": [c.at(t) for c in self.s],
        }

    def laurent_json(self):
        f = lambda L: {str(e): str(c) for e, c in sorted(L.items())}
        return {
            "space": self.space,
            "delta": {n: f(d) for n, d in zip(self.delta_names, self.delta)},
            "x": f(self.x),
            "s": {n: f(c) for n, c in zip(self.s_names, self.s)},
        }


def _iii_standard(a, b):
    a, b = Fraction(a), Fraction(b)
    # delta = a t^-2 e2 + b e1, s = -(b/2) t^2 e2
    return ExampleCoords(
        "III", "standard",
        (Laurent.mono(b), Laurent.mono(a, -2)),
        Laurent(),
        (Laurent(), Laurent.mono(-b / 2, 2)),
        ("e1", "e2"), ("e1", "e2"),
    )


# tag -> (t-exponent applied to the e1 and e2 delta components of the standard coordinates)
_III_SUBST = {
    "standard": (0, 0),
    "weak_diamond": (0, 0),
    "diamond": (0, -1),
    "star": (1, -1),
    "star_val": (1, -1),
    "sl2": (4, 2),
    "sl2_val": (4, 2),
}

# ladder maps on delta components: name -> (source, target, exponents)
III_LADDER = {
    "(1)": ("diamond", "weak_diamond", (0, 1)),
    "(2)": ("diamond", "star", (1, 0)),
    "(3)": ("star_val", "sl2_val", (3, 3)),
    "val->star": ("star_val", "star", (0, 0)),
    "val->sl2": ("sl2_val", "sl2", (0, 0)),
}


def _subst(coords, space, exps):
    return ExampleCoords(
        coords.example, space,
        tuple(d.shift(k) for d, k in zip(coords.delta, exps)),
        coords.x, coords.s, coords.delta_names, coords.s_names,
    )


def _check_a(a):
    if Fraction(a) < 0:
        raise ValidationError("example: a must be >= 0")


def example3_coords(a, b, space):
    _check_a(a)
    if space not in _III_SUBST:
        raise ValidationError(f"example3: unknown space tag {space!r}")
    return _subst(_iii_standard(a, b), space, _III_SUBST[space])


_IV_S_NAMES = ("s34", "s24", "s14", "s13", "s12")
_IV_SUBST = {"standard": 0, "diamond": 0, "star": 0, "star_val": 0, "sl2": 2, "sl2_val": 2}
IV_LADDER = {
    "(1)": ("star_val", "sl2_val", (2,)),
    "val->star": ("star_val", "star", (0,)),
    "val->sl2": ("sl2_val", "sl2", (0,)),
}


def _iv_standard(a, b):
    a, b = Fraction(a), Fraction(b)
    # delta = a y + b = a t^-2 + b, u = 0 in R^6
    return ExampleCoords(
        "IV", "standard",
        (Laurent.mono(a, -2) + Laurent.mono(b),),
        Laurent(),
        tuple(Laurent() for _ in _IV_S_NAMES),
        ("e4->e1",), _IV_S_NAMES,
    )


def example4_coords(a, b, space, mild_only=True):
    _check_a(a)
    if space == "weak_diamond":
        raise ValidationError("example4: no weak-diamond coordinates are available for this example")
    if space not in _IV_SUBST:
        raise ValidationError(f"example4: unknown space tag {space!r}")
    if space == "diamond" and Fraction(a) != 0 and mild_only:
        # the diamond space is identified with the mild part of the star space
        raise ValidationError("example4: diamond coordinates exist only on the mild part (a = 0)")
    return _subst(_iv_standard(a, b), space, (_IV_SUBST[space],))


def _t_of(y):
    y = sympy.Rational(str(Fraction(y)))
    if y <= 0:
        raise ValidationError("example: y must be > 0")
    t = 1 / sympy.sqrt(y)
    return Fraction(int(t.p), int(t.q)) if t.is_Rational else t


def example3_point(a, b, y):
    """{space tag: exact coordinates} of exp(iyN_a)F_b."""
    t = _t_of(y)
    return {tag: example3_coords(a, b, tag).at(t) for tag in III_TAGS}


def example4_point(a, b, y):
    t = _t_of(y)
    out = {}
    for tag in IV_TAGS:
        if tag == "diamond" and Fraction(a) != 0:
            continue
        out[tag] = example4_coords(a, b, tag).at(t)
    return out


# the same standard coordinates from the generic decomposition


def _orbit_point(example, a, b, y):
    if example == "III":
        d = models.example3_data()
        N, F = models.example3_N(a), models.example3_F(d, b)
    else:
        d = models.example4_data()
        N, F = models.example4_N(a), models.example4_F(d, b)
    return F.transform(N.scale(I * Fraction(y)).exp_nilpotent())


def _upper_tau(Fgr, block):
    """tau with F^top(gr) of the rank-2 block spanned by e_hi + tau e_lo."""
    lo, hi = block
    for p in sorted(Fgr.steps, reverse=True):
        S = Fgr.steps[p]
        if S.dim == 0:
            continue
        for v in S.basis:
            if v[hi] != 0 and all(v[k] == 0 for k in range(len(v)) if k not in (lo, hi)):
                return v[lo] / v[hi]
    raise ValidationError("example: could not read the upper half plane coordinate")


def core_standard_coords(example, a, b, y):
    """(delta components, x, s components) via delta_of and spl_W on the explicit point."""
    x = _orbit_point(example, a, b, y)
    _, D = delta_of(x)
    S = spl_W(x)
    tau = _upper_tau(x_gr(x), (0, 1) if example == "III" else (1, 2))
    re_tau = tau.re if isinstance(tau, GaussianRational) else Fraction(tau)
    if example == "III":
        delta = [D.rows[0][2], D.rows[1][2]]
        s = [S.rows[0][2], S.rows[1][2]]
    else:
        delta = [D.rows[0][3]]
        s = [S.rows[2][3], S.rows[1][3], S.rows[0][3], S.rows[0][2], S.rows[0][1]]
    for v in delta + s:
        if isinstance(v, GaussianRational) and v.im != 0:
            raise ValidationError("example: non-real delta or splitting")
    real = lambda v: v.re if isinstance(v, GaussianRational) else Fraction(v)
    return {"delta": [real(v) for v in delta], "x": re_tau, "s": [real(v) for v in s]}


# limits t -> 0


@dataclass
class LimitResult:
    example: str
    space: str
    converges: bool
    t: Fraction | None = None
    delta: object = None  # list of Fractions, or a ValuativeLabel in valuative spaces
    x: Fraction | None = None
    s: list | None = None
    infinite_delta: tuple | None = None  # direction of an infinite delta in Vbar
    reason: str = ""

    def render(self):
        if not self.converges:
            return f"no limit ({self.reason})"
        names = ("e1", "e2") if self.example == "III" else None
        if isinstance(self.delta, ValuativeLabel):
            lab = self.delta.render()
            if self.delta.kind == "point":
                lab = lab[1:-1]
            return f"({lab}, {_fmt_rest(self)})"
        if self.infinite_delta is not None:
            d = _fmt_inf(self.infinite_delta, names)
        else:
            d = _fmt_vec(self.delta, names)
        return f"(0, {d}, {_fmt_rest(self)})"

    def to_json(self):
        out = {"example": self.example, "space": self.space, "converges": self.converges, "label": self.render()}
        if self.converges:
            if isinstance(self.delta, ValuativeLabel):
                out["valuative"] = self.delta.to_json()
            elif self.infinite_delta is not None:
                out["delta_infinite_direction"] = [str(v) for v in self.infinite_delta]
            else:
                out["delta"] = [str(v) for v in self.delta]
            out["x"] = str(self.x)
            out["s"] = [str(v) for v in self.s]
        else:
            out["reason"] = self.reason
        return out


def _fmt_vec(vec, names):
    if names is None:
        return str(vec[0])
    terms = [f"{_coef(c)}{n}" for c, n in zip(vec, names) if c]
    return "+".join(terms).replace("+-", "-") or "0"


def _fmt_inf(vec, names):
    if names is None:
        return "+inf" if vec[0] > 0 else "-inf"
    return "inf(" + _fmt_vec(vec, names) + ")"


def _fmt_rest(res):
    x = str(res.x)
    if res.example == "III":
        return f"{x}, {_fmt_vec(res.s, ('e1', 'e2'))}"
    return "0" if res.x == 0 and not any(res.s) else f"{x}, {[str(v) for v in res.s]}"


def _direction(vec):
    m = max(abs(v) for v in vec)
    return tuple(v / m for v in vec)


def _limit(coords, valuative, primed):
    ex, sp = coords.example, coords.space
    x, s = coords.x.limit(), [c.limit() for c in coords.s]
    if x is None or any(v is None for v in s):
        return LimitResult(ex, sp, False, reason="x or s diverges")
    orders = [d.order() for d in coords.delta if d]
    if not orders or min(orders) >= 0:
        dv = [d.limit() for d in coords.delta]
        if primed and any(dv[1:]):
            return LimitResult(ex, sp, False, reason="delta leaves R e1 at t = 0")
        if valuative:
            lab = ValuativeLabel("point", vec=tuple(dv), names=coords.delta_names if ex == "III" else ())
            return LimitResult(ex, sp, True, _0, lab, x, s)
        return LimitResult(ex, sp, True, _0, dv, x, s)
    k = min(orders)
    lead = tuple(d.get(k, _0) for d in coords.delta)
    if valuative:
        lab = ValuativeLabel("p", Fraction(-k), "", lead, False, coords.delta_names if ex == "III" else ())
        return LimitResult(ex, sp, True, _0, lab, x, s)
    if sp in ("star", "sl2"):
        return LimitResult(ex, sp, True, _0, None, x, s, infinite_delta=_direction(lead))
    return LimitResult(ex, sp, False, reason="delta diverges and this space has no points at infinity")


def example3_limit(a, b, space):
    if space == "standard":
        return LimitResult("III", space, False, reason="t = 0 is not a point of D")
    c = example3_coords(a, b, space)
    return _limit(c, space in VALUATIVE, primed=space in ("diamond", "weak_diamond"))


def example4_limit(a, b, space):
    if space == "standard":
        return LimitResult("IV", space, False, reason="t = 0 is not a point of D")
    if space == "diamond" and Fraction(a) != 0:
        return LimitResult("IV", space, False, reason="the orbit is not mild (a != 0)")
    c = example4_coords(a, b, space)
    return _limit(c, space in VALUATIVE, primed=False)


# the weak-diamond versus star comparison along (t, tc e2, 0, 0)


def noIIstar_demo(cs=(Fraction(-1), Fraction(0), Fraction(1), Fraction(5, 2))):
    """Weak-diamond coordinates (t, t c e2, 0, 0) seen in the star coordinates."""
    rows = []
    for c in cs:
        c = Fraction(c)
        weak = ExampleCoords("III", "weak_diamond", (Laurent(), Laurent.mono(c, 1)), Laurent(), (Laurent(), Laurent()),
                             ("e1", "e2"), ("e1", "e2"))
        # weak_diamond = standard, then the star substitution
        star = _subst(weak, "star", _III_SUBST["star"])
        lw = _limit(weak, False, primed=True)
        ls = _limit(star, False, primed=False)
        rows.append({
            "c": str(c),
            "star_coordinate": {k: {str(e): str(v) for e, v in d.items()} for k, d in zip(("e1", "e2"), star.delta)},
            "weak_diamond_limit": lw.render(),
            "star_limit": ls.render(),
            "agree": lw.render() == ls.render(),
        })
    star_limits = {r["star_limit"] for r in rows}
    return {"rows": rows, "star_limit_depends_on_c": len(star_limits) > 1,
            "weak_diamond_limits": sorted({r["weak_diamond_limit"] for r in rows})}


# ladder consistency


def ladder_consistency(example, a, b, ts):
    """Each printed map composed with the coordinate substitutions agrees on samples."""
    if example == "III":
        ladder, coords = III_LADDER, lambda sp: example3_coords(a, b, sp)
    else:
        ladder, coords = IV_LADDER, lambda sp: example4_coords(a, b, sp)
    out = {}
    for name, (src, dst, exps) in ladder.items():
        mapped = _subst(coords(src), dst, exps)
        out[name] = all(mapped.at(t) == coords(dst).at(t) for t in ts)
    return out


# trajectory dumps


def trajectory_rows(example, a, b, spaces, ys):
    rows = []
    for y in ys:
        t = _t_of(y)
        for sp in spaces:
            c = example3_coords(a, b, sp) if example == "III" else example4_coords(a, b, sp)
            v = c.at(t)
            vals = v["delta"] + [v["x"]] + v["s"]
            rows.append([str(Fraction(y)), _num(t), sp] + [_num(z) for z in vals])
    return rows


def _num(v):
    return str(v) if isinstance(v, Fraction) else str(sympy.nsimplify(v))


def trajectory_csv(example, a, b, spaces, ys):
    k = (2 + 1 + 2) if example == "III" else (1 + 1 + 5)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["y", "t", "space"] + [f"coord_{i}" for i in range(1, k + 1)])
    w.writerows(trajectory_rows(example, a, b, spaces, ys))
    return buf.getvalue()
