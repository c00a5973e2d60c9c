import random

from hypothesis import given
from hypothesis import strategies as st

from mhsdegen import _pykernels, kernels


def test_backend_is_compiled():
    assert kernels.BACKEND == "cython"


@given(st.floats(-1, 1), st.floats(-1, 1), st.integers(1, 2000))
def test_li2_series_backends_agree(re, im, n):
    if re * re + im * im > 1:
        re, im = re / 2, im / 2
    a = kernels.li2_series(re, im, n)
    b = _pykernels.li2_series(re, im, n)
    assert abs(a[0] - b[0]) < 1e-12 and abs(a[1] - b[1]) < 1e-12


@given(st.integers(0, 10**6))
def test_lex_brackets_backends_agree(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 4)
    lf = [rng.randint(-5, 5) for _ in range(m)]
    lg = [rng.randint(-5, 5) for _ in range(m)]
    D = rng.randint(1, 40)
    assert kernels.lex_brackets(lf, lg, D, 64 * D) == _pykernels.lex_brackets(lf, lg, D, 64 * D)
