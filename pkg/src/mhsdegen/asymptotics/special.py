"""Bernoulli polynomials B2, B3 and the Bloch-Wigner dilogarithm D."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

from sympy import bernoulli, factorial

_HALF = 0.5


def bernoulli_B2(x):
    x = Fraction(x)
    return x * x - x + Fraction(1, 6)


def bernoulli_B3(x):
    x = Fraction(x)
    return x**3 - Fraction(3, 2) * x * x + Fraction(1, 2) * x


def frac_part(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


# Li2 via sum B_n u^(n+1)/(n+1)! with u = -log(1-z), B_1 = -1/2
_NB = 40
_BCOEF = [
    float(-Fraction(1, 2) if k == 1 else Fraction(int(bernoulli(k).p), int(bernoulli(k).q))) / float(factorial(k + 1))
    for k in range(_NB)
]


def _li2_small(z):
    acc = 0j
    p = z
    for k in range(1, 80):
        acc += p / (k * k)
        p *= z
        if abs(p) < 1e-18:
            break
    return acc


def _li2_bernoulli(z):
    u = -cmath.log(1 - z)
    acc = 0j
    p = u
    for k in range(_NB):
        acc += _BCOEF[k] * p
        p *= u
    return acc


def _D_direct(z):
    li = _li2_small(z) if abs(z) <= _HALF else _li2_bernoulli(z)
    return li.imag + cmath.phase(1 - z) * math.log(abs(z))


def bloch_wigner_D(z):
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError("Bloch-Wigner D: z must differ from 0 and 1")
    if abs(z) > 1:
        return -bloch_wigner_D(1 / z)
    if abs(z) <= _HALF:
        return _D_direct(z)
    # among the six images choose the one of least modulus
    cands = [(z, 1), (1 - z, -1), (1 / (1 - z), 1), (1 - 1 / z, 1), (z / (z - 1), -1)]
    w, sign = min(cands, key=lambda c: abs(c[0]))
    # near the sixth roots of unity no image is small; _D_direct then uses the log-Bernoulli series
    return sign * _D_direct(w)


def li2_brute(z, nterms=10**6):
    """Partial sum of z^k/k^2 for |z| <= 1 via the compiled kernel when built."""
    from ..kernels import li2_series

    z = complex(z)
    if abs(z) > 1:
        raise ValueError("li2_brute: needs |z| <= 1")
    sr, si = li2_series(z.real, z.imag, nterms)
    return complex(sr, si)


def bloch_wigner_D_brute(z, nterms=10**6):
    """D from the raw series: reflect |z| > 1 through D(z) = -D(1/z)."""
    z = complex(z)
    if abs(z) > 1:
        return -bloch_wigner_D_brute(1 / z, nterms)
    return li2_brute(z, nterms).imag + cmath.phase(1 - z) * math.log(abs(z))
