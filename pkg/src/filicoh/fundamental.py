"""Fundamental objects, their composition, and the algebras they generate.

A fundamental object is an element of the (n-1)-fold wedge power (for
Filippov algebras) or tensor power (for n-Leibniz algebras), written in
coordinates over a :class:`~filicoh.linalg.MultiIndexBasis`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .algebra import AlgebraError, NLieAlgebra, _axpy, check_fi
from .linalg import MultiIndexBasis, QMatrix, RowReducer, common_denominator, perm_sign, solve


class NLeibnizAlgebra:
    """n-ary bracket with no antisymmetry constraint (left n-Leibniz convention).

    ``g`` maps every n-tuple of 0-based indices to a sparse target vector;
    missing tuples bracket to zero.
    """

    antisymmetric = False

    def __init__(self, n: int, d: int, g: Mapping, names=None):
        if n < 2 or d < 1:
            raise AlgebraError("need n >= 2 and d >= 1")
        consts = {}
        for idx, target in g.items():
            idx = tuple(idx)
            if len(idx) != n or any(not 0 <= i < d for i in idx):
                raise AlgebraError(f"bad index {idx}")
            t = {b: Fraction(c) for b, c in target.items() if c}
            if any(not 0 <= b < d for b in t):
                raise AlgebraError("bad target index")
            if t:
                consts[idx] = t
        self.n = n
        self.d = d
        self.g = consts
        self.names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(d))
        self._cache: dict = {}

    def __repr__(self):
        return f"NLeibnizAlgebra(n={self.n}, d={self.d}, nonzero={len(self.g)})"

    def __eq__(self, other):
        if not isinstance(other, NLeibnizAlgebra):
            return NotImplemented
        return (self.n, self.d, self.g, self.names) == (other.n, other.d, other.g, other.names)

    __hash__ = object.__hash__

    def bracket_basis(self, idx):
        return dict(self.g.get(tuple(idx), {}))

    def ad_basis(self, x, z):
        return self.bracket_basis(tuple(x) + (z,))

    def int_tensor(self):
        if "int_tensor" not in self._cache:
            D = common_denominator(c for t in self.g.values() for c in t.values())
            T = np.zeros((self.d,) * (self.n + 1), dtype=np.int64)
            for idx, target in self.g.items():
                for b, c in target.items():
                    T[idx + (b,)] = int(c * D)
            self._cache["int_tensor"] = (T, D)
        return self._cache["int_tensor"]

    def is_antisymmetric(self) -> bool:
        for idx, target in self.g.items():
            for perm in itertools.permutations(range(self.n)):
                s = perm_sign(perm)
                other = self.g.get(tuple(idx[p] for p in perm), {})
                if s == 0:
                    continue
                if {b: s * c for b, c in target.items()} != other:
                    return False
        return all(perm_sign(idx) != 0 for idx in self.g)


def as_leibniz(A: NLieAlgebra) -> NLeibnizAlgebra:
    """View a Filippov algebra as an n-Leibniz algebra with tensor-mode fundamental objects."""
    g = {}
    for idx in itertools.product(range(A.d), repeat=A.n):
        t = A.bracket_basis(idx)
        if t:
            g[idx] = t
    return NLeibnizAlgebra(A.n, A.d, g, names=A.names)


def _mode_of(A) -> str:
    return "wedge" if A.antisymmetric else "tensor"


def fundamental_basis(A, mode: str | None = None) -> MultiIndexBasis:
    mode = mode or _mode_of(A)
    key = ("fbasis", mode)
    if key not in A._cache:
        A._cache[key] = MultiIndexBasis(A.d, A.n - 1, mode)
    return A._cache[key]


# ---------------------------------------------------------------------------
# fundamental vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FundamentalVector:
    algebra: object
    mode: str
    coords: tuple

    def __post_init__(self):
        basis = fundamental_basis(self.algebra, self.mode)
        if len(self.coords) != len(basis):
            raise AlgebraError("fundamental vector has wrong number of coordinates")

    @classmethod
    def from_sparse(cls, A, mode, vec: Mapping):
        size = len(fundamental_basis(A, mode))
        return cls(A, mode, tuple(Fraction(vec.get(i, 0)) for i in range(size)))

    @classmethod
    def decomposable(cls, A, *vectors, mode=None):
        """The fundamental object ``(X_1, ..., X_{n-1})`` built from coordinate vectors."""
        mode = mode or _mode_of(A)
        if len(vectors) != A.n - 1:
            raise AlgebraError(f"need {A.n - 1} vectors")
        basis = fundamental_basis(A, mode)
        out: dict = {}
        nz = [[(i, Fraction(c)) for i, c in enumerate(v) if c] for v in vectors]
        for combo in itertools.product(*nz):
            idx = tuple(i for i, _ in combo)
            k, s = basis.canonical(idx)
            if s == 0:
                continue
            coeff = s
            for _, c in combo:
                coeff *= c
            _axpy(out, coeff, {k: 1})
        return cls.from_sparse(A, mode, out)

    @classmethod
    def basis_element(cls, A, idx: Sequence[int], mode=None):
        """Basis fundamental object for 0-based indices ``idx`` (any order)."""
        mode = mode or _mode_of(A)
        k, s = fundamental_basis(A, mode).canonical(idx)
        return cls.from_sparse(A, mode, {} if s == 0 else {k: s})

    def sparse(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coords) if c}

    def _check(self, other):
        if other.algebra is not self.algebra or other.mode != self.mode:
            raise AlgebraError("fundamental vectors from different spaces")

    def __add__(self, other):
        self._check(other)
        return FundamentalVector(self.algebra, self.mode, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return FundamentalVector(self.algebra, self.mode, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FundamentalVector(self.algebra, self.mode, tuple(-a for a in self.coords))

    def __rmul__(self, c):
        c = Fraction(c)
        return FundamentalVector(self.algebra, self.mode, tuple(c * a for a in self.coords))

    def is_zero(self):
        return not any(self.coords)

    def terms(self):
        """``[(coefficient, 1-based index tuple)]`` for display."""
        basis = fundamental_basis(self.algebra, self.mode)
        return [(c, tuple(i + 1 for i in basis[k])) for k, c in self.sparse().items()]


def random_fundamental(A, rng: random.Random, mode=None, span: int = 3) -> FundamentalVector:
    mode = mode or _mode_of(A)
    size = len(fundamental_basis(A, mode))
    coords = tuple(Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(size))
    return FundamentalVector(A, mode, coords)


# ---------------------------------------------------------------------------
# ad and composition
# ---------------------------------------------------------------------------

def _ad_columns(A, X: FundamentalVector):
    basis = fundamental_basis(A, X.mode)
    cols = []
    for z in range(A.d):
        out: dict = {}
        for k, c in X.sparse().items():
            _axpy(out, c, A.ad_basis(basis[k], z))
        cols.append(out)
    return cols


def ad_matrix(A, X: FundamentalVector) -> QMatrix:
    """Matrix of ``Z -> [X_1, ..., X_{n-1}, Z]``; column z is the image of ``e_z``."""
    if X.algebra is not A:
        raise AlgebraError("fundamental vector belongs to another algebra")
    cols = _ad_columns(A, X)
    return QMatrix([[cols[z].get(y, 0) for z in range(A.d)] for y in range(A.d)], A.d)


def ad_apply(A, X: FundamentalVector, z: Sequence) -> list[Fraction]:
    return ad_matrix(A, X) @ list(z)


def _compose_table(A, mode):
    key = ("compose", mode)
    if key in A._cache:
        return A._cache[key]
    basis = fundamental_basis(A, mode)
    table = {}
    for wi, w in enumerate(basis):
        for vi, v in enumerate(basis):
            out: dict = {}
            for a, va in enumerate(v):
                for y, c in A.ad_basis(w, va).items():
                    k, s = basis.canonical(v[:a] + (y,) + v[a + 1:])
                    if s:
                        _axpy(out, s * c, {k: 1})
            if out:
                table[wi, vi] = out
    A._cache[key] = table
    return table


def compose(A, X: FundamentalVector, Y: FundamentalVector) -> FundamentalVector:
    """``X . Y = sum_a (Y_1, ..., [X, Y_a], ..., Y_{n-1})``, extended bilinearly."""
    if X.mode != Y.mode:
        raise AlgebraError("mode mismatch")
    table = _compose_table(A, X.mode)
    out: dict = {}
    ys = Y.sparse()
    for wi, cx in X.sparse().items():
        for vi, cy in ys.items():
            t = table.get((wi, vi))
            if t:
                _axpy(out, cx * cy, t)
    return FundamentalVector.from_sparse(A, X.mode, out)


# ---------------------------------------------------------------------------
# integer tables used by exhaustive checks and the cochain complexes
# ---------------------------------------------------------------------------

@dataclass
class IntTables:
    """Integer-scaled structure tables over the fundamental basis.

    Every table is linear in the structure constants and carries the
    common denominator ``D``: true values are ``table / D``.

    ``ad[w, z, y]``      coefficient of ``e_y`` in ``[w, e_z]``
    ``comp[w, v, u]``    coefficient of basis object u in ``w . v``
    ``slot[w, y, b, z, o]``  sum over slots i with ``w_i = y`` of the
                         ``e_o`` coefficient of ``[w with w_i -> e_b, e_z]``
    """

    basis: MultiIndexBasis
    D: int
    ad: np.ndarray
    comp: np.ndarray
    slot: np.ndarray


def int_tables(A, mode=None) -> IntTables:
    mode = mode or _mode_of(A)
    key = ("tables", mode)
    if key in A._cache:
        return A._cache[key]
    T, D = A.int_tensor()
    d = A.d
    basis = fundamental_basis(A, mode)
    nb = len(basis)
    ad = np.zeros((nb, d, d), dtype=np.int64)
    for k, w in enumerate(basis):
        ad[k] = T[w]
    # replacement table: object v with slot a replaced by y
    rep_idx = np.zeros((nb, A.n - 1, d), dtype=np.int64)
    rep_sign = np.zeros((nb, A.n - 1, d), dtype=np.int64)
    for k, v in enumerate(basis):
        for a in range(A.n - 1):
            for y in range(d):
                u, s = basis.canonical(v[:a] + (y,) + v[a + 1:])
                rep_idx[k, a, y] = u if s else 0
                rep_sign[k, a, y] = s
    comp = np.zeros((nb, nb, nb), dtype=np.int64)
    for vi, v in enumerate(basis):
        for a, va in enumerate(v):
            for y in range(d):
                s = rep_sign[vi, a, y]
                if s:
                    comp[:, vi, rep_idx[vi, a, y]] += s * ad[:, va, y]
    slot = np.zeros((nb, d, d, d, d), dtype=np.int64)
    for wi, w in enumerate(basis):
        for a, wa in enumerate(w):
            for b in range(d):
                s = rep_sign[wi, a, b]
                if s:
                    slot[wi, wa, b] += s * ad[rep_idx[wi, a, b]]
    tabs = IntTables(basis, D, ad, comp, slot)
    A._cache[key] = tabs
    return tabs


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

@dataclass
class IdentityReport:
    passed: bool
    checked: dict
    failures: dict

    def to_json(self):
        return {"passed": self.passed, "checked": self.checked, "failures": self.failures}


def _exhaustive_identity_residuals(A, mode):
    """Residual tensors of the three composition identities on all basis objects (integer scaled)."""
    tabs = int_tables(A, mode)
    C, ad = tabs.comp, tabs.ad
    # X.(Y.Z) - Y.(X.Z) - (X.Y).Z  (each term carries D^2)
    yz = C
    lhs1 = np.einsum("yzu,xuv->xyzv", yz, C)
    lhs2 = np.einsum("xzu,yuv->xyzv", C, C)
    rhs = np.einsum("xyu,uzv->xyzv", C, C)
    setb = lhs1 - lhs2 - rhs
    # ad_{X.Y} = ad_X ad_Y - ad_Y ad_X, with ad[w] as map z -> y
    adxy = np.einsum("xyu,uzo->xyzo", C, ad)
    prod = np.einsum("xmo,yzm->xyzo", ad, ad)
    lie = adxy - (prod - prod.transpose(1, 0, 2, 3))
    skew = adxy + adxy.transpose(1, 0, 2, 3)
    return setb, lie, skew


def check_fundamental_identities(A, samples: int | None = None, seed: int = 0, mode=None) -> IdentityReport:
    """Verify the composition identities, exhaustively (``samples=None``) or on random objects.

    Checked: ``X.(Y.Z) - Y.(X.Z) = (X.Y).Z``,
    ``ad_{X.Y} = [ad_X, ad_Y]`` and ``ad_{X.Y} = -ad_{Y.X}``.
    """
    mode = mode or _mode_of(A)
    names = ("composition", "ad_commutator", "ad_skew")
    if samples is None:
        residuals = _exhaustive_identity_residuals(A, mode)
        nb = len(fundamental_basis(A, mode))
        checked = {"composition": nb ** 3, "ad_commutator": nb ** 2, "ad_skew": nb ** 2}
        failures = {}
        basis = fundamental_basis(A, mode)
        for name, res in zip(names, residuals):
            bad = np.argwhere(res != 0)
            if len(bad):
                first = bad[0]
                failures[name] = {
                    "count": int(len(bad)),
                    "witness": [[i + 1 for i in basis[int(j)]] for j in first[:-1][: 3 if name == "composition" else 2]],
                }
        return IdentityReport(not failures, checked, failures)

    rng = random.Random(seed)
    failures = {}
    counts = dict.fromkeys(names, 0)
    for t in range(samples):
        X = random_fundamental(A, rng, mode)
        Y = random_fundamental(A, rng, mode)
        Z = random_fundamental(A, rng, mode)
        xy = compose(A, X, Y)
        yx = compose(A, Y, X)
        res = compose(A, X, compose(A, Y, Z)) - compose(A, Y, compose(A, X, Z)) - compose(A, xy, Z)
        counts["composition"] += 1
        if not res.is_zero():
            failures.setdefault("composition", {"count": 0, "trial": t})["count"] += 1
        adx, ady, adxy = ad_matrix(A, X), ad_matrix(A, Y), ad_matrix(A, xy)
        counts["ad_commutator"] += 1
        if adxy != (adx @ ady) - (ady @ adx):
            failures.setdefault("ad_commutator", {"count": 0, "trial": t})["count"] += 1
        counts["ad_skew"] += 1
        if adxy != -ad_matrix(A, yx):
            failures.setdefault("ad_skew", {"count": 0, "trial": t})["count"] += 1
    return IdentityReport(not failures, counts, failures)


# ---------------------------------------------------------------------------
# associated algebras
# ---------------------------------------------------------------------------

@dataclass
class AssociatedLie:
    dim: int
    basis_objects: list          # indices into the fundamental basis
    matrices: list               # QMatrix ad images, one per basis element
    constants: dict              # (a, b) -> {c: coefficient}
    antisymmetric: bool
    jacobi: bool

    def bracket(self, a: int, b: int) -> dict:
        return dict(self.constants.get((a, b), {}))

    def killing_matrix(self) -> QMatrix:
        """``K_ab = tr(ad_a ad_b)`` in the adjoint representation of the Lie algebra itself."""
        r = self.dim
        ads = []
        for a in range(r):
            ads.append(QMatrix([[self.constants.get((a, e), {}).get(c, 0) for e in range(r)] for c in range(r)], r))
        return QMatrix([[(ads[a] @ ads[b]).trace() for b in range(r)] for a in range(r)], r)


def _flatten(M: QMatrix):
    return [x for row in M.data for x in row]


def associated_lie_algebra(A) -> AssociatedLie:
    """Lie algebra spanned by the inner derivations ``ad_X``.

    The basis is chosen greedily in canonical fundamental-basis order; the
    bracket is the matrix commutator expressed back in that basis.
    """
    mode = _mode_of(A)
    basis = fundamental_basis(A, mode)
    mats = [ad_matrix(A, FundamentalVector.from_sparse(A, mode, {k: 1})) for k in range(len(basis))]
    chosen = []
    chosen_flat = []
    red = RowReducer(A.d * A.d)
    for k, M in enumerate(mats):
        flat = _flatten(M)
        if red.add_rational({i: x for i, x in enumerate(flat) if x}):
            chosen.append(k)
            chosen_flat.append(flat)
    r = len(chosen)
    basis_mats = [mats[k] for k in chosen]
    system = QMatrix([[chosen_flat[j][i] for j in range(r)] for i in range(A.d * A.d)], r) if r else None
    constants = {}
    for a in range(r):
        for b in range(r):
            comm = basis_mats[a] @ basis_mats[b] - basis_mats[b] @ basis_mats[a]
            if comm.is_zero():
                continue
            x = solve(system, _flatten(comm))
            if x is None:
                raise AlgebraError("inner derivations are not closed under commutators")
            constants[a, b] = {c: v for c, v in enumerate(x) if v}
    antisym = all(
        {c: -v for c, v in constants.get((b, a), {}).items()} == constants.get((a, b), {})
        for a in range(r) for b in range(r)
    )
    jacobi = True
    for a, b, c in itertools.product(range(r), repeat=3):
        acc: dict = {}
        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            for e, v in constants.get((y, z), {}).items():
                _axpy(acc, v, constants.get((x, e), {}))
        if acc:
            jacobi = False
            break
    return AssociatedLie(r, chosen, basis_mats, constants, antisym, jacobi)


def associated_leibniz_algebra(A) -> NLeibnizAlgebra:
    """The 2-bracket ``[X, Y] := X . Y`` on the space of fundamental objects."""
    mode = _mode_of(A)
    basis = fundamental_basis(A, mode)
    table = _compose_table(A, mode)
    g = {(w, v): dict(t) for (w, v), t in table.items()}
    letter_names = ["(" + ",".join(A.names[i] for i in idx) + ")" for idx in basis]
    return NLeibnizAlgebra(2, len(basis), g, names=letter_names)


def check_leibniz_identity(L):
    """Left (n-)Leibniz identity on all basis tuples; returns an :class:`~filicoh.algebra.FIReport`."""
    return check_fi(L)


def non_antisymmetry_witness(A):
    """First pair of basis objects with ``X.Y != -Y.X``, or None."""
    mode = _mode_of(A)
    table = _compose_table(A, mode)
    nb = len(fundamental_basis(A, mode))
    for w in range(nb):
        for v in range(w, nb):
            xy = table.get((w, v), {})
            yx = table.get((v, w), {})
            if {k: -c for k, c in yx.items()} != xy:
                return w, v
    return None


def to_dense(X: FundamentalVector):
    return list(X.coords)
