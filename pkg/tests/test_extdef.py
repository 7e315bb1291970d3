from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from filicoh.algebra import derivation_residual
from filicoh.cohomology import (
    Cochain,
    CochainLayout,
    coboundary,
    cohomology_dims,
    from_dual_coordinates,
    random_cocycle,
    trivialize_adjoint_simple,
    trivialize_trivial_simple,
    zero_cochain_from_matrix,
)
from filicoh.extdef import (
    XI,
    ExtensionError,
    TruncPoly,
    central_extend,
    cochain_bracket,
    deform,
    fi_residual_orders,
    first_order_residual,
    obstruction_cocycle,
    trivialize_deformation,
    trivialize_extension,
)
from filicoh.linalg import RowReducer
from filicoh.suite import a4_constants_on_abelian, nilpotent_example


def _alpha123(A):
    layout = CochainLayout.of(A)
    vals = [0] * layout.dim("trivial", 1)
    vals[layout.N.index_of((0, 1, 2))] = 1
    return Cochain(A, "trivial", 1, vals)


# -- truncated polynomials -------------------------------------------------------

polys = st.lists(st.integers(-5, 5), min_size=3, max_size=3).map(lambda c: TruncPoly(c))


@given(polys, polys, polys)
def test_truncpoly_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == TruncPoly([0], 2)


def test_truncpoly_truncates():
    t = TruncPoly([0, 1], 2)
    assert t * t == TruncPoly([0, 0, 1])
    assert not (t * t * t)


# -- central extensions ------------------------------------------------------------

def test_extension_example(a4):
    ext = central_extend(a4, _alpha123(a4))
    assert ext.extended.d == 5 and ext.extended.names[-1] == XI
    assert ext.extended.bracket_basis((0, 1, 2)) == {3: -1, 4: 1}
    assert ext.fi.passed


@given(seed=st.integers(0, 10_000))
def test_every_extension_of_a4_is_filippov_and_trivial(seed, a4_lorentz):
    A = a4_lorentz
    c = Cochain.random(A, "trivial", 1, random.Random(seed))
    ext = central_extend(A, c)
    assert ext.fi.passed
    rep = trivialize_extension(ext, trivialize_trivial_simple(A, c))
    assert rep.success
    # Xi is now a direct summand
    assert all(ext.xi not in t for t in rep.algebra.f.values())


def test_trivialization_with_wrong_beta_fails(a4):
    ext = central_extend(a4, _alpha123(a4))
    rep = trivialize_extension(ext, Cochain.zero(a4, "trivial", 0))
    assert not rep.success
    assert rep.residual == {"1,2,3": 1}


def test_non_cocycle_extension_fails_fi():
    N, bad = nilpotent_example()
    ext = central_extend(N, bad)
    assert not ext.fi.passed
    assert ext.fi.worst_case["x"] == [1, 2]
    assert ext.fi.worst_case["y"] == [1, 3, 5]


def test_extension_input_checks(a4, a5):
    with pytest.raises(ExtensionError):
        central_extend(a4, Cochain.zero(a4, "adjoint", 1))
    with pytest.raises(ExtensionError):
        central_extend(a4, Cochain.zero(a5, "trivial", 1))


# -- deformations ------------------------------------------------------------------

def test_deformation_by_bracket_rescales(a4):
    ident = zero_cochain_from_matrix(a4, [[int(i == j) for j in range(4)] for i in range(4)])
    D = deform(a4, coboundary(ident), 1)
    for S, target in a4.f.items():
        for b, v in target.items():
            assert D.f[S][b] == TruncPoly([v, 2 * v])
    assert all(r.passed for r in fi_residual_orders(D))


def test_symmetric_dual_deformation_first_order(a4):
    D = [[Fraction(i + j) for j in range(4)] for i in range(4)]
    orders = fi_residual_orders(deform(a4, from_dual_coordinates(a4, D), 1))
    assert orders[0].passed and orders[1].passed


def test_antisymmetric_dual_deformation_fails(a4):
    D = [[1 if (i, j) == (0, 1) else -1 if (i, j) == (1, 0) else 0 for j in range(4)] for i in range(4)]
    orders = fi_residual_orders(deform(a4, from_dual_coordinates(a4, D), 1))
    assert orders[0].passed
    assert not orders[1].passed and orders[1].witness is not None


def test_first_order_residual_kernel_is_z1(a4):
    # an independent route to dim Z^1: kernel of the linearized FI
    size = CochainLayout.of(a4).dim("adjoint", 1)
    cols = [first_order_residual(a4, Cochain.basis(a4, "adjoint", 1, k)) for k in range(size)]
    red = RowReducer(size)
    for r in range(len(cols[0])):
        red.add_rational({k: cols[k][r] for k in range(size) if cols[k][r]})
    assert size - red.rank == cohomology_dims(a4, "adjoint", 1).dimZ == 10


@given(seed=st.integers(0, 10_000))
def test_deformation_trivialized(seed, a4):
    c = random_cocycle(a4, "adjoint", 1, random.Random(seed))
    rep = trivialize_deformation(deform(a4, c, 1), trivialize_adjoint_simple(a4, c))
    assert rep.success
    assert rep.algebra.f == a4.f


def test_deformation_by_coboundary_trivialized(a5):
    beta = Cochain.random(a5, "adjoint", 0, random.Random(1))
    assert trivialize_deformation(deform(a5, coboundary(beta), 1), beta).success


def test_abelian_base_is_not_rigid(abelian4, a4):
    c = a4_constants_on_abelian(abelian4, a4)
    orders = fi_residual_orders(deform(abelian4, c, 2))
    assert [r.passed for r in orders] == [True, True, True]
    beta = Cochain.random(abelian4, "adjoint", 0, random.Random(0))
    assert not trivialize_deformation(deform(abelian4, c, 1), beta).success


def test_deform_input_checks(a4):
    c = Cochain.zero(a4, "adjoint", 1)
    with pytest.raises(ExtensionError):
        deform(a4, c, 3)
    with pytest.raises(ExtensionError):
        deform(a4, c, 1, alpha2=c)
    with pytest.raises(ExtensionError):
        deform(a4, Cochain.zero(a4, "trivial", 1))


# -- second order -------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(3))
def test_gamma_matches_truncated_polynomial_residual(a4_lorentz, seed):
    A = a4_lorentz
    c = random_cocycle(A, "adjoint", 1, random.Random(seed))
    rep = obstruction_cocycle(A, c, decide_class=True)
    D = deform(A, c, 2)
    for x in itertools.combinations(range(A.d), A.n - 1):
        for y in itertools.combinations(range(A.d), A.n):
            res = derivation_residual(D.bracket_basis, A.d, x, y)
            expect = [res[b].c[2] if b in res else 0 for b in range(A.d)]
            got = rep.gamma.evaluate([x, y[:-1]], y[-1])
            assert got == expect
    assert rep.closed and rep.class_ok
    # the adjoint second cohomology of A_4 vanishes, so the obstruction is always removable
    assert rep.in_image


def test_gamma_of_bracket_rescaling_is_zero(a4):
    ident = zero_cochain_from_matrix(a4, [[int(i == j) for j in range(4)] for i in range(4)])
    # the deformed bracket is (1 + 2t)[.], which satisfies the identity to all orders
    rep = obstruction_cocycle(a4, coboundary(ident))
    assert rep.gamma.is_zero() and rep.closed


def test_obstruction_rejects_non_cocycle(a4):
    D = [[1 if (i, j) == (0, 1) else 0 for j in range(4)] for i in range(4)]
    with pytest.raises(ExtensionError):
        obstruction_cocycle(a4, from_dual_coordinates(a4, D))


def test_cochain_bracket_antisymmetric(a4):
    cb = cochain_bracket(Cochain.random(a4, "adjoint", 1, random.Random(9)))
    assert cb((2, 0, 1)) == cb((0, 1, 2))
    assert cb((1, 0, 2)) == {b: -v for b, v in cb((0, 1, 2)).items()}
    assert cb((0, 0, 2)) == {}
