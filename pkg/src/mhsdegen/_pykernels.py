"""Pure-Python versions of the hot kernels, used when the extension is absent."""
from __future__ import annotations


def li2_series(re, im, nterms):
    """sum_{k=1}^{nterms} z^k / k^2 for |z| <= 1, returned as (re, im)."""
    sr = si = 0.0
    pr, pi = re, im
    for k in range(1, nterms + 1):
        inv = 1.0 / (k * k)
        sr += pr * inv
        si += pi * inv
        pr, pi = pr * re - pi * im, pr * im + pi * re
        if pr * pr + pi * pi < 1e-300:
            break
    return sr, si


def _lex_nonneg(b, lf, a, lg):
    for x, y in zip(lf, lg):
        v = b * x - a * y
        if v:
            return v > 0
    return True


def lex_brackets(lf, lg, D, amax):
    """Bounded-denominator brackets for sup/inf of a/b.

    L = max a/b with b*lf - a*lg >=lex 0, U = min a/b with a*lg - b*lf >=lex 0,
    over 1 <= b <= D and 0 <= a <= amax.  Returns (Ln, Ld, hasU, Un, Ud).
    """
    lf = [int(x) for x in lf]
    lg = [int(x) for x in lg]
    Ln, Ld = 0, 1
    Un, Ud, hasU = 0, 1, False
    for b in range(1, D + 1):
        a = 0
        while a <= amax and _lex_nonneg(b, lf, a, lg):
            a += 1
        best = a - 1
        if best >= 0 and best * Ld > Ln * b:
            Ln, Ld = best, b
        a = 0
        while a <= amax and not _lex_nonneg(a, lg, b, lf):
            a += 1
        if a <= amax and (not hasU or a * Ud < Un * b):
            Un, Ud, hasU = a, b, True
    return Ln, Ld, hasU, Un, Ud
