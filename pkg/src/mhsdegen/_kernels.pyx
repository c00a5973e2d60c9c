# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: the Li2 power series and bounded-denominator brackets."""
from libc.stdlib cimport malloc, free


def li2_series(double re, double im, long nterms):
    cdef double sr = 0.0, si = 0.0, pr = re, pi = im, t, inv
    cdef long k
    for k in range(1, nterms + 1):
        inv = 1.0 / (<double>k * <double>k)
        sr += pr * inv
        si += pi * inv
        t = pr * re - pi * im
        pi = pr * im + pi * re
        pr = t
        if pr * pr + pi * pi < 1e-300:
            break
    return sr, si


cdef inline bint _lex_nonneg(long long b, long long* f, long long a, long long* g, int r):
    cdef int i
    cdef long long v
    for i in range(r):
        v = b * f[i] - a * g[i]
        if v != 0:
            return v > 0
    return True


def lex_brackets(lf, lg, long D, long amax):
    cdef int r = len(lf)
    cdef long long* f = <long long*>malloc(r * sizeof(long long))
    cdef long long* g = <long long*>malloc(r * sizeof(long long))
    cdef long long Ln = 0, Ld = 1, Un = 0, Ud = 1, a, b, best
    cdef bint hasU = False
    cdef int i
    try:
        for i in range(r):
            f[i] = lf[i]
            g[i] = lg[i]
        for b in range(1, D + 1):
            a = 0
            while a <= amax and _lex_nonneg(b, f, a, g, r):
                a += 1
            best = a - 1
            if best >= 0 and best * Ld > Ln * b:
                Ln = best
                Ld = b
            a = 0
            while a <= amax and not _lex_nonneg(a, g, b, f, r):
                a += 1
            if a <= amax and (not hasU or a * Ud < Un * b):
                Un = a
                Ud = b
                hasU = True
        return Ln, Ld, hasU, Un, Ud
    finally:
        free(f)
        free(g)
