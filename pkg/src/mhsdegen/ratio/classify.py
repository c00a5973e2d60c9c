"""Limit labels of paths in R^2_{>=0} for the three spaces S_[:], S_val, S_[val].

A path is q_j(t) = c_j * t^gamma_j * exp(-k_j * t^(-beta_j)) as t -> 0+.
The linear family (c q, q) and the family (exp(-1/t), exp(-1/t^a)) are
special cases.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import integer_nthroot

from .ratio import INF, format_ext


class NoLimit(ValueError):
    pass


@dataclass(frozen=True)
class Irrational:
    """An exponent known to be irrational, carried by a float approximation."""

    approx: float

    def __float__(self):
        return self.approx


def _is_rational(x):
    return isinstance(x, (int, Fraction))


def _div(x, y):
    if _is_rational(x) and _is_rational(y):
        return Fraction(x) / Fraction(y)
    return Irrational(float(x) / float(y))


def _fmt(x):
    if isinstance(x, Irrational):
        return f"irrational~{x.approx:.12g}"
    if isinstance(x, float) and x != INF:
        return repr(x)
    return format_ext(x)


@dataclass(frozen=True)
class LimitLabel:
    tag: str  # "R", "P", "S"
    a: object
    c: object = None

    def __str__(self):
        if self.c is None:
            return f"{self.tag}({_fmt(self.a)})"
        return f"{self.tag}({_fmt(self.a)},{_fmt(self.c)})"

    def to_json(self):
        out = {"tag": self.tag, "a": _fmt(self.a), "label": str(self)}
        if self.c is not None:
            out["c"] = _fmt(self.c)
            out["c_exact"] = not isinstance(self.c, float) or self.c == INF
        return out


@dataclass(frozen=True)
class Coordinate:
    c: Fraction = Fraction(1)
    gamma: object = Fraction(0)
    k: object = Fraction(0)
    beta: object = Fraction(0)

    @property
    def kind(self):
        if float(self.k) > 0 and float(self.beta) > 0:
            return "exp"
        if float(self.gamma) > 0:
            return "power"
        raise NoLimit("no limit along path: coordinate does not tend to 0")


def linear_path(c):
    """(c q, q)."""
    return (Coordinate(c=Fraction(c), gamma=Fraction(1)), Coordinate(gamma=Fraction(1)))


def power_exponential_path(a):
    """(exp(-1/t), exp(-1/t^a))."""
    return (Coordinate(k=Fraction(1), beta=Fraction(1)), Coordinate(k=Fraction(1), beta=a))


def _cmp(x, y):
    fx, fy = (x, y) if _is_rational(x) and _is_rational(y) else (float(x), float(y))
    return (fx > fy) - (fx < fy)


def _rpow_ratio(c1, a, c2):
    """c1^a / c2 for rational a > 0, exact when c1^a is rational."""
    a = Fraction(a)
    num, den = Fraction(c1).numerator ** a.numerator, Fraction(c1).denominator ** a.numerator
    rn, en = integer_nthroot(num, a.denominator)
    rd, ed = integer_nthroot(den, a.denominator)
    if en and ed:
        return Fraction(rn, rd) / Fraction(c2)
    return float(c1) ** float(a) / float(c2)


def classify_limit(path):
    q1, q2 = path
    k1, k2 = q1.kind, q2.kind
    # S_[:] : a = lim log q2 / log q1
    if k1 == "exp" and k2 == "exp":
        s = _cmp(q2.beta, q1.beta)
        a = INF if s > 0 else Fraction(0) if s < 0 else _div(q2.k, q1.k)
    elif k1 == "exp":
        a = Fraction(0)
    elif k2 == "exp":
        a = INF
    else:
        a = _div(q2.gamma, q1.gamma)
    r_label = LimitLabel("R", a)
    # S_val : additionally lim q1^a / q2 when a is a positive rational
    if _is_rational(a) and a != 0 and a != INF:
        # log(q1^a/q2) = (a log c1 - log c2) + (a g1 - g2) log t + (k2 t^-b2 - a k1 t^-b1)
        lead = Fraction(a) * Fraction(q1.gamma) - Fraction(q2.gamma) if _is_rational(q1.gamma) and _is_rational(q2.gamma) else None
        if lead is None:
            raise NoLimit("no limit along path: irrational power exponents")
        if lead > 0:
            c = Fraction(0)
        elif lead < 0:
            c = INF
        else:
            c = _rpow_ratio(q1.c, a, q2.c)
        p_label = LimitLabel("P", a, c)
    else:
        p_label = LimitLabel("P", a)
    # S_[val] : t_j = -1/log q_j, a' = lim log t2 / log t1
    if k1 == "exp" and k2 == "exp":
        a2 = _div(q2.beta, q1.beta)
    elif k1 == "exp":
        a2 = Fraction(0)
    elif k2 == "exp":
        a2 = INF
    else:
        a2 = Fraction(1)
    if _is_rational(a2) and a2 != 0 and a2 != INF:
        if k1 == "exp":
            c2 = _exp_ratio(q1.k, a2, q2.k)
        else:
            c2 = _div(q2.gamma, q1.gamma)
        s_label = LimitLabel("S", a2, c2)
    else:
        s_label = LimitLabel("S", a2)
    return r_label, p_label, s_label


def _exp_ratio(k1, a, k2):
    """lim t1^a / t2 = k2 / k1^a when t_j ~ t^{b_j} / k_j."""
    if not (_is_rational(k1) and _is_rational(k2)):
        return float(k2) / float(k1) ** float(a)
    return _rpow_ratio(Fraction(1) / Fraction(k1), a, Fraction(1) / Fraction(k2))


def path_from_json(obj):
    fam = obj.get("family")
    if fam == "linear":
        return linear_path(Fraction(obj["c"]))
    if fam == "power_exponential":
        a = obj["a"]
        if isinstance(a, dict):
            a = Irrational(float(a["approx"])) if a.get("irrational") else Fraction(a["approx"])
        else:
            a = Fraction(a)
        return power_exponential_path(a)
    if fam == "general":
        coords = []
        for q in obj["coords"]:
            vals = {}
            for key in ("c", "gamma", "k", "beta"):
                v = q.get(key, "1" if key == "c" else "0")
                if isinstance(v, dict):
                    vals[key] = Irrational(float(v["approx"]))
                else:
                    vals[key] = Fraction(v)
            coords.append(Coordinate(**vals))
        return tuple(coords)
    raise ValueError(f"unknown path family {fam!r}")
