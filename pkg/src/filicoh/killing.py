"""Kasymov's trace form on fundamental objects, in its bilinear and multilinear readings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .algebra import NLieAlgebra, read_signature
from .fundamental import FundamentalVector, ad_matrix, fundamental_basis, int_tables
from .linalg import MultiIndexBasis, QMatrix, RowReducer, perm_sign


def kasymov_form(A: NLieAlgebra, X: FundamentalVector, Y: FundamentalVector) -> Fraction:
    """``tr(ad_X ad_Y)``."""
    if X.mode != "wedge" or Y.mode != "wedge":
        raise ValueError("the trace form is defined on wedge-mode fundamental objects")
    if X.algebra is not A or Y.algebra is not A:
        raise ValueError("fundamental objects belong to a different algebra")
    return (ad_matrix(A, X) @ ad_matrix(A, Y)).trace()


def _int_gram(A: NLieAlgebra):
    """Integer Gram matrix on the wedge basis and its scale ``D**2``."""
    key = "gram_int"
    if key not in A._cache:
        tabs = int_tables(A, "wedge")
        # tr(ad_w ad_v) with ad[w, z, y] = coefficient of e_y in [w, e_z]
        G = np.einsum("wzy,vyz->wv", tabs.ad.astype(object), tabs.ad.astype(object))
        A._cache[key] = (G, tabs.D * tabs.D)
    return A._cache[key]


@dataclass
class GramReport:
    matrix: QMatrix
    rank: int
    nullity: int
    null_basis: list
    is_diagonal: bool

    def to_json(self):
        from .serialize import gram_to_json

        return gram_to_json(self)


def wedge_gram_matrix(A: NLieAlgebra) -> GramReport:
    """The trace form as a bilinear form on the wedge basis, with rank and null space."""
    G, scale = _int_gram(A)
    W = fundamental_basis(A, "wedge")
    m = len(W)
    M = QMatrix([[Fraction(int(G[i, j]), scale) for j in range(m)] for i in range(m)])
    red = RowReducer(m)
    for i in range(m):
        red.add({j: int(G[i, j]) for j in range(m) if G[i, j]})
    null = [FundamentalVector(A, "wedge", tuple(v)) for v in red.kernel()]
    return GramReport(M, red.rank, m - red.rank, null, M.is_diagonal())


def gram_epsilon_formula(A: NLieAlgebra) -> QMatrix | None:
    """Gram matrix of a simple algebra from a double Levi-Civita contraction.

    ``k(I, J) = sum_{l,s} eps_l eps_s epsilon(J, s, l) epsilon(I, l, s)``
    with plain permutation signs; an independent route to the diagonal
    values.  Returns None when the algebra is not in simple form.
    """
    sig = read_signature(A)
    if sig is None:
        return None
    W = fundamental_basis(A, "wedge")
    d = A.d
    rows = []
    for I in W:
        row = []
        for J in W:
            acc = 0
            for l, s in product(range(d), repeat=2):
                a = perm_sign(I + (l, s))
                if a:
                    acc += sig[l] * sig[s] * perm_sign(J + (s, l)) * a
            row.append(Fraction(acc))
        rows.append(row)
    return QMatrix(rows)


def kasymov_evaluation_matrix(A: NLieAlgebra):
    """Integer matrix ``M[z, (x, Y)] = k(e_z, x_2..x_{n-1}, Y)`` (up to a positive scale).

    Columns range over (n-2)-subsets x and (n-1)-subsets Y of the basis.
    """
    G, _ = _int_gram(A)
    W = fundamental_basis(A, "wedge")
    n, d = A.n, A.d
    fillers = MultiIndexBasis(d, n - 2, "wedge")
    cols = len(fillers) * len(W)
    M = np.zeros((d, cols), dtype=object)
    for z in range(d):
        for xi, x in enumerate(fillers):
            k, s = W.canonical((z,) + x)
            if s:
                M[z, xi * len(W):(xi + 1) * len(W)] = s * G[k]
    return M


def kasymov_nondegenerate(A: NLieAlgebra):
    """``(True, None)`` if no nonzero Z has vanishing trace form against all fillers,
    else ``(False, Z)`` with Z a kernel witness (Fractions)."""
    M = kasymov_evaluation_matrix(A)
    red = RowReducer(A.d)
    for col in M.T:
        nz = {i: int(v) for i, v in enumerate(col) if v}
        if nz:
            red.add(nz)
        if red.rank == A.d:
            return True, None
    ker = red.kernel()
    if not ker:
        return True, None
    return False, [Fraction(v) for v in ker[0]]
