from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mhsdegen.algebra.matrix import DimensionError, Matrix, commutator, solve_linear
from mhsdegen.algebra.scalars import GaussianRational, format_scalar, normalize, parse_scalar
from mhsdegen.algebra.subspace import DecreasingFiltration, IncreasingFiltration, Subspace

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussianRational, rats, rats)
scalars = st.one_of(rats, gauss)


def matrices(n, m=None, elems=rats):
    m = n if m is None else m
    return st.lists(st.lists(elems, min_size=m, max_size=m), min_size=n, max_size=n)


def _sym(rows):
    def conv(x):
        if isinstance(x, GaussianRational):
            return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)
        x = Fraction(x)
        return sympy.Rational(x.numerator, x.denominator)

    return sympy.Matrix([[conv(x) for x in r] for r in rows])


# scalars


@given(gauss, gauss, gauss)
def test_gaussian_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    if y:
        assert (x / y) * y == x


@given(scalars)
def test_scalar_text_round_trip(x):
    assert parse_scalar(format_scalar(x)) == normalize(x)


@pytest.mark.parametrize("text", ["1 +i", "", "1.5", "i*2", "2*"])
def test_scalar_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_scalar_parse_forms():
    assert parse_scalar("i") == GaussianRational(0, 1)
    assert parse_scalar("-1/2-3*i") == GaussianRational(Fraction(-1, 2), -3)
    assert parse_scalar("7") == Fraction(7)
    assert parse_scalar("4+0*i") == Fraction(4)


# matrices against sympy


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, elems=scalars)))
def test_det_rank_match_sympy(rows):
    M = Matrix(rows)
    S = _sym(rows)
    assert _sym([[M.det()]])[0] == sympy.simplify(S.det())
    assert M.rank() == S.rank()


@given(st.integers(1, 4).flatmap(lambda n: matrices(n)))
def test_inverse(rows):
    M = Matrix(rows)
    if M.det() == 0:
        with pytest.raises(ZeroDivisionError):
            M.inverse()
        return
    assert M @ M.inverse() == Matrix.identity(M.nrows)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n + 1), st.lists(rats, min_size=n, max_size=n))))
def test_solve_linear(data):
    rows, b = data
    A = Matrix(rows)
    sol = solve_linear(A, b)
    if sol is None:
        assert A.rank() < Matrix([r + [bi] for r, bi in zip(rows, b)]).rank()
        return
    x, ker = sol
    assert A.apply(x) == [normalize(v) for v in b]
    for v in ker:
        assert all(c == 0 for c in A.apply(v))
    assert len(ker) == A.ncols - A.rank()


@given(st.integers(1, 5).flatmap(lambda n: matrices(n)))
def test_exp_log_unipotent(rows):
    n = len(rows)
    L = Matrix([[x if i < j else Fraction(0) for j, x in enumerate(r)] for i, r in enumerate(rows)], n)
    assert L.is_nilpotent()
    assert L.exp_nilpotent().log_unipotent() == L


def test_matrix_errors():
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])


@given(matrices(3), matrices(3))
def test_commutator_trace_and_sign(a, b):
    A, B = Matrix(a), Matrix(b)
    assert commutator(A, B).trace() == 0
    assert commutator(A, B) == -commutator(B, A)


# subspaces


vectors4 = st.lists(st.lists(rats, min_size=4, max_size=4), max_size=4)


@given(vectors4, vectors4)
def test_dimension_formula(u, v):
    U, V = Subspace(4, u), Subspace(4, v)
    assert (U + V).dim + (U & V).dim == U.dim + V.dim
    assert (U & V).issubspace(U) and U.issubspace(U + V)


@given(vectors4)
def test_canonical_basis(u):
    U = Subspace(4, u)
    shuffled = Subspace(4, [list(r) for r in reversed(U.basis)] + [[2 * x for x in r] for r in U.basis])
    assert shuffled == U and hash(shuffled) == hash(U)
    assert U.dim == _sym(u).rank() if u else U.dim == 0


@given(vectors4, matrices(4))
def test_image_preimage(u, m):
    U, M = Subspace(4, u), Matrix(m)
    assert U.issubspace(U.image(M).preimage(M))
    assert all(M.apply(list(v)) in U.image(M) for v in U.basis)


@given(vectors4)
def test_annihilator(u):
    U = Subspace(4, u)
    ann = U.annihilator()
    assert len(ann) == 4 - U.dim
    assert all(sum(a * b for a, b in zip(x, y)) == 0 for x in ann for y in U.basis)


def test_filtrations():
    e = lambda i: [Fraction(int(i == j)) for j in range(3)]
    W = IncreasingFiltration(3, {-2: [e(0)], 0: [e(0), e(1), e(2)]})
    assert W[-3].dim == 0 and W[-1].dim == 1 and W[5].dim == 3
    assert W.gr_dim(-2) == 1 and W.gr_dim(0) == 2
    with pytest.raises(ValueError):
        IncreasingFiltration(3, {0: [e(0)], 1: [e(1)], 2: [e(0), e(1), e(2)]})
    Fd = DecreasingFiltration(3, {0: [e(2)], -1: [e(0), e(1), e(2)]})
    assert Fd[1].dim == 0 and Fd[-5].dim == 3
