"""Regulator and height asymptotics for degenerating Tate-curve families.

A torsion section is s q^r with s = exp(2 pi i theta), r in Q/Z.
Both pairings grow like a y + b + O(1/y).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .special import bernoulli_B2, bernoulli_B3, bloch_wigner_D, frac_part


class AsymptoticsError(ValueError):
    pass


@dataclass(frozen=True)
class TorsionSectionSpec:
    root_angle: Fraction
    q_exponent: Fraction
    multiplicity: int

    def __post_init__(self):
        ra, qe = Fraction(self.root_angle), Fraction(self.q_exponent)
        if not (0 <= ra < 1 and 0 <= qe < 1):
            raise AsymptoticsError("torsion section: root_angle and q_exponent must lie in [0,1)")
        object.__setattr__(self, "root_angle", ra)
        object.__setattr__(self, "q_exponent", qe)
        object.__setattr__(self, "multiplicity", int(self.multiplicity))

    def point(self):
        return (self.root_angle, self.q_exponent)

    def to_json(self):
        return {"root_angle": str(self.root_angle), "q_exponent": str(self.q_exponent), "multiplicity": self.multiplicity}


@dataclass
class AsymptoticPair:
    a: Fraction
    b: float | None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self):
        return {"a": str(self.a), "b": self.b, "diagnostics": self.diagnostics}


def parse_divisor(items):
    """[{"root_angle": "p/q", "q_exponent": "p/q", "multiplicity": m}, ...]"""
    try:
        out = [
            TorsionSectionSpec(Fraction(str(d["root_angle"])), Fraction(str(d.get("q_exponent", "0"))), int(d["multiplicity"]))
            for d in items
        ]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as ex:
        if isinstance(ex, AsymptoticsError):
            raise
        raise AsymptoticsError(f"divisor: malformed entry ({ex})") from None
    return out


def _check_degree(div, name):
    if sum(s.multiplicity for s in div) != 0:
        raise AsymptoticsError(f"{name}: multiplicities must sum to 0")


def _all_r_zero(*divs):
    return all(s.q_exponent == 0 for d in divs for s in d)


def _ratio(x, y):
    """alpha/beta at r = 0: a root of unity."""
    return cmath.exp(2j * math.pi * float(x.root_angle - y.root_angle))


def k2_regulator_asymptotics(alpha, beta, with_b=None):
    """e2-coefficient of a exactly; b (the e1 coefficient) only when every r = 0.

    with_b: None reports b when the formula applies, True demands it.
    """
    _check_degree(alpha, "alpha")
    _check_degree(beta, "beta")
    a = sum(
        (x.multiplicity * y.multiplicity * bernoulli_B3(frac_part(x.q_exponent - y.q_exponent)) for x in alpha for y in beta),
        Fraction(0),
    )
    r0 = _all_r_zero(alpha, beta)
    diag = {"a_component": "e2", "a_e1_component": "not determined", "all_r_zero": r0}
    if with_b and not r0:
        raise AsymptoticsError("b formula out of scope: needs every q_exponent = 0")
    b = None
    if r0 and with_b is not False:
        b = 0.0
        skipped = 0
        for x in alpha:
            for y in beta:
                if x.root_angle == y.root_angle:
                    skipped += 1  # D(1) = 0
                    continue
                b += x.multiplicity * y.multiplicity * bloch_wigner_D(_ratio(x, y))
        diag["b_component"] = "e1"
        diag["terms_at_one"] = skipped
    return AsymptoticPair(a, b, diag)


def height_asymptotics(Y, Z, with_b=None):
    _check_degree(Y, "Y")
    _check_degree(Z, "Z")
    for x in Y:
        for y in Z:
            if x.point() == y.point():
                raise AsymptoticsError("height: supports of Y and Z must be disjoint")
    a = sum(
        (x.multiplicity * y.multiplicity * bernoulli_B2(frac_part(x.q_exponent - y.q_exponent)) for x in Y for y in Z),
        Fraction(0),
    )
    r0 = _all_r_zero(Y, Z)
    if with_b and not r0:
        raise AsymptoticsError("b formula out of scope: needs every q_exponent = 0")
    b = None
    if r0 and with_b is not False:
        b = sum(x.multiplicity * y.multiplicity * math.log(abs(1 - _ratio(x, y))) for x in Y for y in Z)
    return AsymptoticPair(a, b, {"all_r_zero": r0})


def fit_linear_asymptotic(samples, tail=None):
    """Least squares value ~ slope*y + intercept over the last `tail` samples.

    Exact when every sample is rational. residual = max |fit - value| on the tail.
    """
    pts = list(samples)
    if len(pts) < 4:
        raise AsymptoticsError("fit: need at least 4 samples")
    ys = [p[0] for p in pts]
    if any(b <= a for a, b in zip(ys, ys[1:])):
        raise AsymptoticsError("fit: y must be strictly increasing")
    if tail is not None:
        pts = pts[-max(4, tail):]
    exact = all(isinstance(v, (int, Fraction)) for p in pts for v in p)
    conv = Fraction if exact else float
    xs = [conv(p[0]) for p in pts]
    vs = [conv(p[1]) for p in pts]
    n = len(xs)
    mx = sum(xs) / n
    mv = sum(vs) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise AsymptoticsError("fit: degenerate sample set")
    slope = sum((x - mx) * (v - mv) for x, v in zip(xs, vs)) / sxx
    intercept = mv - slope * mx
    residual = max(abs(slope * x + intercept - v) for x, v in zip(xs, vs))
    return slope, intercept, residual
