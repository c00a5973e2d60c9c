"""Exact scalars over Q and Q(i).

Rationals are plain ``fractions.Fraction``.  Gaussian rationals carry two
Fractions.  Arithmetic between the two kinds is closed and exact.
"""
from __future__ import annotations

import re
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussianRational:
    """``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # construction helpers
    @classmethod
    def coerce(cls, x):
        if type(x) is cls:
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, complex):
            raise TypeError("floating point complex is not exact")
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def is_real(self):
        return self.im == 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def simplify(self):
        """Return a Fraction when the imaginary part vanishes."""
        return self.re if self.im == 0 else self

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if type(other) is GaussianRational:
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is GaussianRational:
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if type(other) is GaussianRational:
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if type(other) is GaussianRational:
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def conj(x):
    if type(x) is GaussianRational:
        return GaussianRational(x.re, -x.im)
    return x


def re_part(x):
    return x.re if type(x) is GaussianRational else Fraction(x)


def im_part(x):
    return x.im if type(x) is GaussianRational else _ZERO


def is_real(x):
    return type(x) is not GaussianRational or x.im == 0


def normalize(x):
    """Collapse to Fraction when real."""
    if type(x) is GaussianRational:
        return x.re if x.im == 0 else x
    if type(x) is Fraction:
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


_RAT = r"[+-]?\d+(?:/\d+)?"
_RE_REAL = re.compile(rf"^({_RAT})$")
_RE_IMAG = re.compile(rf"^([+-]?)(?:(\d+(?:/\d+)?)\*)?i$")
_RE_FULL = re.compile(rf"^({_RAT})([+-])(?:(\d+(?:/\d+)?)\*)?i$")


def parse_scalar(text):
    """Parse ``a/b``, ``a/b+c/d*i`` or ``i``.  Spaces are rejected."""
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        raise ValueError(f"scalar literal must be a string, got {text!r}")
    if " " in text or not text:
        raise ValueError(f"bad scalar literal {text!r}")
    m = _RE_REAL.match(text)
    if m:
        return Fraction(m.group(1))
    m = _RE_IMAG.match(text)
    if m:
        c = Fraction(m.group(2)) if m.group(2) else _ONE
        return GaussianRational(0, -c if m.group(1) == "-" else c).simplify()
    m = _RE_FULL.match(text)
    if m:
        c = Fraction(m.group(3)) if m.group(3) else _ONE
        return GaussianRational(Fraction(m.group(1)), -c if m.group(2) == "-" else c).simplify()
    raise ValueError(f"bad scalar literal {text!r}")


def _fmt_rat(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x):
    """Inverse of ``parse_scalar``."""
    r, m = re_part(x), im_part(x)
    if m == 0:
        return _fmt_rat(r)
    mag = abs(m)
    tail = "i" if mag == 1 else f"{_fmt_rat(mag)}*i"
    if r == 0:
        return ("-" if m < 0 else "") + tail
    return f"{_fmt_rat(r)}{'-' if m < 0 else '+'}{tail}"
