from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from filicoh.linalg import (
    MultiIndexBasis,
    QMatrix,
    RowReducer,
    epsilon,
    perm_sign,
    rank_kernel,
    solve,
    span_basis,
    wedge_expand,
)

small_ints = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


def _inversions(seq):
    return sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])


def test_epsilon_identity_and_transposition():
    assert epsilon((1, 2, 3)) == 1
    assert epsilon((2, 1, 3)) == -1
    assert epsilon((1, 1, 3)) == 0
    assert epsilon((3, 1, 2)) == 1


@given(st.permutations(list(range(6))))
def test_perm_sign_matches_inversion_parity(p):
    assert perm_sign(p) == (-1) ** _inversions(p)


def test_wedge_expand():
    assert wedge_expand((3, 1)) == ((1, 3), -1)
    assert wedge_expand((0, 2, 1)) == ((0, 1, 2), -1)
    assert wedge_expand((2, 2)) == (None, 0)


@pytest.mark.parametrize("d,k,mode", [(4, 2, "wedge"), (5, 3, "wedge"), (3, 2, "tensor"), (6, 0, "wedge")])
def test_basis_sizes(d, k, mode):
    B = MultiIndexBasis(d, k, mode)
    assert len(B) == B.expected_size
    assert all(B.index_of(t) == i for i, t in enumerate(B))


def test_basis_canonical():
    B = MultiIndexBasis(4, 2)
    assert B.canonical((2, 0)) == (B.index_of((0, 2)), -1)
    assert B.canonical((1, 1)) == (None, 0)
    T = MultiIndexBasis(3, 2, "tensor")
    assert T.canonical((2, 0)) == (T.index_of((2, 0)), 1)


def test_rank_kernel_example():
    r, ker = rank_kernel(QMatrix([[1, 2], [2, 4]]))
    assert r == 1
    assert ker == [(Fraction(-2), Fraction(1))]


def test_det_and_trace():
    M = QMatrix([[2, 1], [1, 3]])
    assert M.det() == 5
    assert M.trace() == 5
    assert not M.is_diagonal()
    assert QMatrix.identity(3).is_diagonal()


@given(matrices())
def test_rank_nullity(rows):
    M = QMatrix(rows)
    r, ker = rank_kernel(M)
    assert r + len(ker) == M.cols
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M.data)


@given(matrices())
def test_rank_is_transpose_invariant(rows):
    M = QMatrix(rows)
    assert M.rank() == M.transpose().rank()


@given(matrices(4, 4), st.lists(small_ints, min_size=4, max_size=4))
def test_solve_consistent_systems(rows, x):
    M = QMatrix(rows)
    x = x[:M.cols]
    b = [sum(Fraction(a) * xi for a, xi in zip(row, x)) for row in M.data]
    sol = solve(M, b)
    assert sol is not None
    assert [sum(a * s for a, s in zip(row, sol)) for row in M.data] == b


def test_solve_inconsistent():
    assert solve(QMatrix([[1, 1], [2, 2]]), [1, 3]) is None


@given(matrices())
def test_row_reducer_agrees_with_dense_rank(rows):
    M = QMatrix(rows)
    red = RowReducer(M.cols)
    for row in M.data:
        red.add_rational({j: v for j, v in enumerate(row) if v})
    assert red.rank == M.rank()
    assert len(red.kernel()) == M.cols - M.rank()
    for row in M.data:
        assert red.contains({j: v for j, v in enumerate(row) if v})


def test_row_reducer_contains_rational_combination():
    red = RowReducer(3)
    red.add({0: 2, 1: 4})
    assert red.contains({0: Fraction(1, 2), 1: Fraction(1)})
    assert not red.contains({2: Fraction(1)})


@given(matrices())
def test_span_basis_spans_same_space(rows):
    B = span_basis(rows)
    assert len(B) == QMatrix(rows).rank()
