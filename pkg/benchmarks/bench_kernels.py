"""Compiled versus pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat R]
"""
from __future__ import annotations

import argparse
import timeit

from mhsdegen import _pykernels
from mhsdegen import kernels

CASES = {
    "li2_series(i, 10^6)": lambda k: k.li2_series(0.0, 1.0, 10**6),
    "li2_series(0.9e^{i}, 10^5)": lambda k: k.li2_series(0.486, 0.757, 10**5),
    "lex_brackets(D=50)": lambda k: k.lex_brackets([3, -1, 2], [2, 5, -1], 50, 400),
    "lex_brackets(D=200)": lambda k: k.lex_brackets([7, 1], [3, 0], 200, 1000),
}


def _agree(x, y):
    return all(abs(a - b) < 1e-9 for a, b in zip(x, y))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"backend selected at import: {kernels.BACKEND}")
    print(f"{'case':32s} {'compiled (s)':>14s} {'python (s)':>12s} {'speedup':>8s}")
    for name, fn in CASES.items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        if kernels.BACKEND == "cython":
            cy = min(timeit.repeat(lambda: fn(kernels), number=1, repeat=args.repeat))
            if not _agree(fn(kernels), fn(_pykernels)):
                raise SystemExit(f"{name}: backends disagree")
            print(f"{name:32s} {cy:14.5f} {py:12.5f} {py / cy:8.1f}")
        else:
            print(f"{name:32s} {'n/a':>14s} {py:12.5f} {'':>8s}")


if __name__ == "__main__":
    main()
