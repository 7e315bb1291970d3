from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from filicoh.algebra import direct_sum, simple_algebra
from filicoh.fundamental import FundamentalVector, fundamental_basis, random_fundamental
from filicoh.killing import (
    gram_epsilon_formula,
    kasymov_form,
    kasymov_nondegenerate,
    wedge_gram_matrix,
)
from filicoh.linalg import QMatrix


def test_a4_gram_is_minus_two_identity(a4):
    rep = wedge_gram_matrix(a4)
    assert rep.matrix == QMatrix.identity(6).scale(-2)
    assert (rep.rank, rep.nullity) == (6, 0)
    assert rep.is_diagonal


@pytest.mark.parametrize("sig", list(itertools.product((1, -1), repeat=4)))
def test_gram_diagonal_nondegenerate_all_signatures(sig):
    A = simple_algebra(3, sig)
    rep = wedge_gram_matrix(A)
    assert rep.is_diagonal and rep.rank == 6
    assert all(rep.matrix[i, i] != 0 for i in range(6))
    # a second code path: Levi-Civita contraction
    assert rep.matrix == gram_epsilon_formula(A)


@pytest.mark.parametrize("n", [4, 5])
def test_gram_epsilon_route_higher_arity(n):
    A = simple_algebra(n, tuple((-1) ** i for i in range(n + 1)))
    rep = wedge_gram_matrix(A)
    assert rep.is_diagonal and rep.nullity == 0
    assert rep.matrix == gram_epsilon_formula(A)


def test_sum_gram_degenerate_but_kasymov_nondegenerate(a4a4):
    rep = wedge_gram_matrix(a4a4)
    assert (rep.rank, rep.nullity) == (12, 16)
    basis = fundamental_basis(a4a4)
    cross = {k for k, w in enumerate(basis) if (w[0] < 4) != (w[1] < 4)}
    assert len(cross) == 16
    # the null space is exactly the span of the cross-ideal wedges
    for v in rep.null_basis:
        assert set(v.sparse()) <= cross
    assert kasymov_nondegenerate(a4a4) == (True, None)


def test_kasymov_detects_solvable(solvable3):
    ok, witness = kasymov_nondegenerate(solvable3)
    assert not ok
    assert witness == [Fraction(1), Fraction(0), Fraction(0)]


def test_abelian_is_degenerate(abelian4):
    ok, witness = kasymov_nondegenerate(abelian4)
    assert not ok and any(witness)
    assert wedge_gram_matrix(abelian4).rank == 0


def test_three_summands():
    A = simple_algebra(3, (1, 1, 1, 1))
    assert kasymov_nondegenerate(direct_sum([A, A, A]))[0]


@given(seed=st.integers(0, 10_000))
def test_form_symmetric(seed, a4_lorentz):
    rng = random.Random(seed)
    X, Y = random_fundamental(a4_lorentz, rng), random_fundamental(a4_lorentz, rng)
    assert kasymov_form(a4_lorentz, X, Y) == kasymov_form(a4_lorentz, Y, X)


def test_form_matches_gram_entries(a4_lorentz):
    rep = wedge_gram_matrix(a4_lorentz)
    basis = fundamental_basis(a4_lorentz)
    for i, j in itertools.product(range(len(basis)), repeat=2):
        X = FundamentalVector.basis_element(a4_lorentz, basis[i])
        Y = FundamentalVector.basis_element(a4_lorentz, basis[j])
        assert kasymov_form(a4_lorentz, X, Y) == rep.matrix[i, j]


def test_form_rejects_tensor_mode(a4):
    X = FundamentalVector.basis_element(a4, (0, 1), mode="tensor")
    with pytest.raises(ValueError):
        kasymov_form(a4, X, X)


def test_gram_json(a4):
    doc = wedge_gram_matrix(a4).to_json()
    assert doc["rank"] == 6 and doc["nullity"] == 0 and doc["is_diagonal"]
    assert doc["matrix"][0][0] == {"num": -2, "den": 1}
