"""Exhaustive search for relative monodromy filtrations over F_2.

Vectors are n-bit integers; a subspace is the 2^n-bit mask of its elements.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


def span(vecs):
    els = {0}
    for v in vecs:
        els |= {e ^ v for e in els}
    m = 0
    for e in els:
        m |= 1 << e
    return m


def elements(mask):
    out, e = [], 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


@lru_cache(maxsize=None)
def all_subspaces(n):
    """Every subspace of F_2^n as (mask, basis), one per reduced echelon form."""
    out = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            # row r may use bit j > pivots[r] when j is not a pivot
            slots = [(r, j) for r in range(k) for j in range(pivots[r] + 1, n) if j not in pivots]
            for bits in itertools.product((0, 1), repeat=len(slots)):
                rows = [1 << p for p in pivots]
                for (r, j), b in zip(slots, bits):
                    if b:
                        rows[r] |= 1 << j
                out.append((span(rows), tuple(rows)))
    return tuple(out)


def apply(N, v):
    """N as a list of column bitmasks."""
    out, j = 0, 0
    while v:
        if v & 1:
            out ^= N[j]
        v >>= 1
        j += 1
    return out


def image(N, mask):
    return span([apply(N, e) for e in elements(mask)])


def compose(A, B):
    return [apply(A, c) for c in B]


def kernel_mask(N, n):
    m = 0
    for v in range(1 << n):
        if apply(N, v) == 0:
            m |= 1 << v
    return m


def monodromy_f2(N, n, center):
    """M_k = sum over i - j = k - center of ker N^(i+1) cap im N^j."""
    ident = [1 << j for j in range(n)]
    powers = [ident]
    for _ in range(2 * n + 3):
        powers.append(compose(N, powers[-1]))
    full = span(ident)
    ker = [kernel_mask(P, n) for P in powers]
    im = [image(P, full) for P in powers]
    out = {}
    for k in range(-n - 1, n + 2):
        acc = []
        for i in range(2 * n + 2):
            j = i - k
            if 0 <= j <= 2 * n + 2:
                acc.extend(elements(ker[i + 1] & im[j]))
        out[k + center] = span(acc)
    return out


def reduce_mod2(rows):
    """Integer matrix (list of rows) to column bitmasks."""
    n = len(rows)
    return [sum(((rows[i][j] % 2) << i) for i in range(n)) for j in range(len(rows[0]))]


def rmf_oracle(N_rows, weights, limit=2):
    """All filtrations M of F_2^n with N M_k in M_{k-2} inducing the monodromy
    filtration centered at w on each gr^W_w.  W is the coordinate filtration
    given by the (sorted) weight of each coordinate."""
    n = len(weights)
    N = reduce_mod2(N_rows)
    ws = sorted(set(weights))
    blocks = {w: [i for i in range(n) if weights[i] == w] for w in ws}
    Wmask = {w: span([1 << i for i in range(n) if weights[i] <= w]) for w in ws}
    refs = {}
    for w in ws:
        idx = blocks[w]
        m = len(idx)
        Nw = [sum(((N[c] >> idx[r]) & 1) << r for r in range(m)) for c in idx]
        refs[w] = monodromy_f2(Nw, m, w)
    lo, hi = min(ws) - n - 1, max(ws) + n + 1

    def proj(mask, w):
        idx = blocks[w]
        vs = []
        for e in elements(mask & Wmask[w]):
            vs.append(sum(((e >> i) & 1) << r for r, i in enumerate(idx)))
        return span(vs)

    def ref(w, k):
        r = refs[w]
        if k in r:
            return r[k]
        return r[max(r)] if k > max(r) else 1

    groups = {}
    for m, _ in all_subspaces(n):
        groups.setdefault(tuple(proj(m, w) for w in ws), []).append(m)
    cands = {k: groups.get(tuple(ref(w, k) for w in ws), []) for k in range(lo, hi + 1)}
    images = {}
    sols = []

    def rec(k, chain):
        if len(sols) >= limit:
            return
        if k > hi:
            sols.append(dict(chain))
            return
        for m in cands[k]:
            prev = chain.get(k - 1, 1)
            if prev & ~m:
                continue
            if m not in images:
                images[m] = image(N, m)
            if images[m] & ~chain.get(k - 2, 1):
                continue
            chain[k] = m
            rec(k + 1, chain)
            del chain[k]

    rec(lo, {})
    return sols, (lo, hi)


def _v2(x):
    """2-adic valuation of a nonzero rational."""
    n, d, v = x.numerator, x.denominator, 0
    while n % 2 == 0:
        n //= 2
        v += 1
    while d % 2 == 0:
        d //= 2
        v -= 1
    return v


def reduce_subspace_mod2(vectors):
    """Reduction mod 2 of (span of rational vectors) cap Z_(2)^n, as an element mask.

    Elimination over the 2-local integers with unit pivots, so the reduced
    rows are independent and span the reduction.
    """
    from fractions import Fraction

    rows = [[Fraction(x) for x in v] for v in vectors if any(x != 0 for x in v)]
    out = []
    while rows:
        norm = []
        for r in rows:
            v = min(_v2(x) for x in r if x != 0)
            s = Fraction(2) ** (-v)
            norm.append([x * s for x in r])
        piv = norm[0]
        c = next(j for j, x in enumerate(piv) if x != 0 and _v2(x) == 0)
        rest = []
        for r in norm[1:]:
            f = r[c] / piv[c]
            r2 = [x - f * y for x, y in zip(r, piv)]
            if any(x != 0 for x in r2):
                rest.append(r2)
        out.append(sum(((x.numerator * pow(x.denominator, -1, 2)) % 2) << i for i, x in enumerate(piv)))
        rows = rest
    return span(out)
