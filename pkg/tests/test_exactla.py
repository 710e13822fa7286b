from fractions import Fraction

import pytest
import sympy
from sympy import GF, ZZ
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings, strategies as st

from quiverhom.exactla import (EchelonSpan, Field, Matrix, Q, column_space, complement_basis, kernel_basis,
                               rank, solve, solve_many, sparse_kernel, sparse_rank)

F7 = Field(7)


def M(rows, field=Q):
    return Matrix.from_rows(field, rows)


def test_field_parse_and_str():
    assert Field.parse("Q") is not None and str(Field.parse("Q")) == "Q"
    assert str(Field.parse("F7")) == "F7"
    assert Field.parse("Fp").p > 1000
    with pytest.raises(ValueError):
        Field.parse("F8")
    with pytest.raises(ValueError):
        Field.parse("R")


def test_canonical_entries():
    assert Q(Fraction(4, 2)) == 2 and type(Q(Fraction(4, 2))) is int
    assert Q(Fraction(6, 4)) == Fraction(3, 2)
    assert F7(-1) == 6
    assert F7(Fraction(1, 3)) == 5
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert type(Q.inv(-1)) is int
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


def test_rank_and_kernel_small():
    assert rank(M([[1, 2], [2, 4]])) == 1
    assert rank(M([[1, 2], [2, 4]], F7)) == 1
    assert rank(M([[1, 2], [2, 1]], Field(3))) == 1
    assert rank(M([[1, 2], [2, 1]])) == 2
    K = kernel_basis(M([[2, 2, 2], [3, 3, 3]]))
    assert K.shape == (3, 2)
    assert (M([[2, 2, 2], [3, 3, 3]]) @ K).is_zero()
    assert kernel_basis(Matrix.zeros(Q, 0, 2)).shape == (2, 2)


def test_solve():
    A = M([[1, 2], [3, 4]])
    x = solve(A, [5, 6])
    assert A.apply(x) == (5, 6)
    assert solve(M([[1, 1], [1, 1]]), [1, 2]) is None
    X = solve_many(A, Matrix.identity(Q, 2))
    assert A @ X == Matrix.identity(Q, 2)
    assert A.inverse() == X
    with pytest.raises(ValueError):
        M([[1, 1], [1, 1]]).inverse()


def test_shape_errors():
    with pytest.raises(ValueError):
        M([[1, 2]]) @ M([[1, 2]])
    with pytest.raises(ValueError):
        M([[1, 2], [3]])
    with pytest.raises(ValueError):
        M([[1]]) + M([[1, 2]])


def test_complement_and_column_space():
    B = Matrix.from_columns(Q, [[1, 1, 0]], 3)
    assert complement_basis(B, 3) == [0, 2]
    C = column_space(M([[1, 2], [2, 4], [0, 0]]))
    assert C.cols == 1


def test_echelon_span():
    es = EchelonSpan(Q)
    assert es.add({0: 1, 1: 1})
    assert es.add({1: 2})
    assert not es.add({0: 3})
    assert es.contains({0: 5, 1: -2})
    assert len(es) == 2


def test_transpose_stack_select():
    A = M([[1, 2, 3], [4, 5, 6]])
    assert A.T.shape == (3, 2) and A.T[2, 1] == 6
    assert A.vstack(A).shape == (4, 3)
    assert A.hstack(A).shape == (2, 6)
    assert A.select_columns([2, 0]).to_rows() == [[3, 1], [6, 4]]
    assert A.select_rows([1]).to_rows() == [[4, 5, 6]]


small = st.integers(min_value=-4, max_value=4)


@st.composite
def int_matrices(draw, max_side=6):
    r = draw(st.integers(1, max_side))
    c = draw(st.integers(1, max_side))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_rank_matches_sympy(rows):
    assert rank(M(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_rank_nullity_and_kernel(rows):
    A = M(rows)
    K = kernel_basis(A)
    assert K.cols + rank(A) == A.cols
    assert (A @ K).is_zero()
    assert rank(K) == K.cols


@settings(max_examples=60, deadline=None)
@given(int_matrices(), st.sampled_from([3, 5, 7, 101]))
def test_rank_mod_p_matches_sympy(rows, p):
    dm = DomainMatrix([[ZZ(x) for x in r] for r in rows], (len(rows), len(rows[0])), ZZ).convert_to(GF(p))
    A = M(rows, Field(p))
    assert rank(A) == dm.rank()
    K = kernel_basis(A)
    assert K.cols + rank(A) == A.cols
    assert (A @ K).is_zero()


@settings(max_examples=60, deadline=None)
@given(int_matrices(5), st.lists(small, min_size=6, max_size=6))
def test_solve_consistent(rows, xs):
    A = M(rows)
    x0 = xs[:A.cols]
    b = A.apply(x0)
    x = solve(A, b)
    assert x is not None and A.apply(x) == b


@settings(max_examples=60, deadline=None)
@given(int_matrices(4), int_matrices(4))
def test_matmul_matches_sympy(a, b):
    A, B = M(a), M([row[:] for row in b])
    if A.cols != B.rows:
        return
    expected = sympy.Matrix(a) * sympy.Matrix(b)
    assert (A @ B).to_rows() == [[int(x) for x in expected.row(i)] for i in range(expected.rows)]


def test_sparse_helpers():
    rows = [{0: 1, 1: 1}, {0: 2, 1: 2}]
    assert sparse_rank(rows, Q) == 1
    ker = sparse_kernel([{0: 1, 1: 1}], 2, Q)
    assert ker == [{0: -1, 1: 1}]


def test_fractions_appear_only_when_needed():
    A = M([[2, 0], [0, 4]])
    inv = A.inverse()
    assert inv[0, 0] == Fraction(1, 2)
    assert all(type(x) is int for x in (A @ Matrix.identity(Q, 2)).entries)
