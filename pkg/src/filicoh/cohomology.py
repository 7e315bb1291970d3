"""Cochain complexes of a Filippov algebra for the trivial and adjoint actions.

A p-cochain takes p fundamental objects and one more algebra element.
Coordinates are stored on the symmetry class used throughout: each
fundamental block is antisymmetric, and for p >= 1 the last block joined
with the final argument is a fully antisymmetric n-slot.  So the reduced
coordinate tensor has shape

    p = 0:   (d,)                       [+ (d,) for adjoint values]
    p >= 1:  (|W|,) * (p - 1) + (|N|,)  [+ (d,) for adjoint values]

with W the (n-1)-subsets and N the n-subsets of the basis.  Coboundaries
are evaluated on the *full* argument tensor ``(|W|,) * p + (d,)`` with
integer-scaled numpy einsums; rank and kernel computations then run
exactly over the integers.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import NLieAlgebra, blocks_of, read_signature
from .fundamental import fundamental_basis, int_tables
from .linalg import MultiIndexBasis, RowReducer, common_denominator, perm_sign

log = logging.getLogger(__name__)

ACTIONS = ("trivial", "adjoint")
MAX_DEGREE = 2
_INT_LIMIT = 2 ** 62


class CohomologyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# index bookkeeping
# ---------------------------------------------------------------------------

class CochainLayout:
    """Index tables shared by all cochains on one algebra."""

    def __init__(self, A: NLieAlgebra):
        self.A = A
        self.n, self.d = A.n, A.d
        self.W = fundamental_basis(A, "wedge")
        self.N = MultiIndexBasis(A.d, A.n, "wedge")
        nw, d = len(self.W), A.d
        self.merge_idx = np.zeros((nw, d), dtype=np.int64)
        self.merge_sign = np.zeros((nw, d), dtype=np.int64)
        for wi, w in enumerate(self.W):
            for z in range(d):
                k, s = self.N.canonical(w + (z,))
                self.merge_idx[wi, z] = k if s else 0
                self.merge_sign[wi, z] = s
        self.rep_w = np.array([self.W.index_of(S[:-1]) for S in self.N], dtype=np.int64)
        self.rep_z = np.array([S[-1] for S in self.N], dtype=np.int64)

    @staticmethod
    def of(A: NLieAlgebra) -> "CochainLayout":
        if "layout" not in A._cache:
            A._cache["layout"] = CochainLayout(A)
        return A._cache["layout"]

    def reduced_shape(self, action, p):
        d = self.d
        base = (d,) if p == 0 else (len(self.W),) * (p - 1) + (len(self.N),)
        return base + ((d,) if action == "adjoint" else ())

    def full_shape(self, action, p):
        d = self.d
        return (len(self.W),) * p + (d,) + ((d,) if action == "adjoint" else ())

    def dim(self, action, p) -> int:
        return int(np.prod(self.reduced_shape(action, p)))

    def expand(self, reduced, action, p, batch=False):
        """Reduced coordinates -> full argument tensor (antisymmetric extension)."""
        if p == 0:
            return reduced
        off = 1 if batch else 0
        ax = off + p - 1
        out = np.take(reduced, self.merge_idx, axis=ax)
        sign = self.merge_sign.reshape(self.merge_sign.shape + (1,) * (out.ndim - ax - 2))
        return out * sign

    def reduce(self, full, action, p, batch=False):
        """Full argument tensor -> reduced coordinates (reads canonical representatives)."""
        if p == 0:
            return full
        off = 1 if batch else 0
        ax = off + p - 1
        index = (slice(None),) * ax + (self.rep_w, self.rep_z)
        return full[index]


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------

def _frac_array(values, shape):
    arr = np.empty(int(np.prod(shape)), dtype=object)
    flat = list(values)
    if len(flat) != arr.size:
        raise CohomologyError("cochain has the wrong number of coordinates")
    arr[:] = [v if type(v) is Fraction else Fraction(v) for v in flat]
    return arr.reshape(shape)


class Cochain:
    """A p-cochain with trivial (scalar) or adjoint (algebra-valued) coefficients."""

    def __init__(self, algebra: NLieAlgebra, action: str, p: int, values):
        if action not in ACTIONS:
            raise CohomologyError(f"unknown action {action!r}")
        if p < 0:
            raise CohomologyError("negative degree")
        self.algebra = algebra
        self.action = action
        self.p = p
        layout = CochainLayout.of(algebra)
        shape = layout.reduced_shape(action, p)
        if isinstance(values, np.ndarray):
            values = values.reshape(-1).tolist()
        self.values = _frac_array(values, shape)
        self.values.setflags(write=False)

    @classmethod
    def zero(cls, A, action, p):
        return cls(A, action, p, [0] * CochainLayout.of(A).dim(action, p))

    @classmethod
    def basis(cls, A, action, p, k):
        v = [0] * CochainLayout.of(A).dim(action, p)
        v[k] = 1
        return cls(A, action, p, v)

    @classmethod
    def random(cls, A, action, p, rng: random.Random, span=3, density=1.0):
        dim = CochainLayout.of(A).dim(action, p)
        vals = []
        for _ in range(dim):
            if rng.random() < density:
                vals.append(Fraction(rng.randint(-span, span), rng.randint(1, span)))
            else:
                vals.append(Fraction(0))
        return cls(A, action, p, vals)

    @property
    def layout(self) -> CochainLayout:
        return CochainLayout.of(self.algebra)

    def flat(self) -> list[Fraction]:
        return list(self.values.reshape(-1))

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (other.algebra is self.algebra and other.action == self.action and other.p == self.p
                and self.flat() == other.flat())

    __hash__ = None

    def _same(self, other):
        if other.algebra is not self.algebra or other.action != self.action or other.p != self.p:
            raise CohomologyError("cochains live in different spaces")

    def __add__(self, other):
        self._same(other)
        return Cochain(self.algebra, self.action, self.p, [a + b for a, b in zip(self.flat(), other.flat())])

    def __sub__(self, other):
        self._same(other)
        return Cochain(self.algebra, self.action, self.p, [a - b for a, b in zip(self.flat(), other.flat())])

    def __neg__(self):
        return Cochain(self.algebra, self.action, self.p, [-a for a in self.flat()])

    def __rmul__(self, c):
        c = Fraction(c)
        return Cochain(self.algebra, self.action, self.p, [c * a for a in self.flat()])

    def is_zero(self) -> bool:
        return not any(self.flat())

    def __repr__(self):
        nz = sum(1 for v in self.flat() if v)
        return f"Cochain(action={self.action}, p={self.p}, nonzero={nz})"

    def full(self):
        """Full argument tensor of Fractions (object array)."""
        return self.layout.expand(self.values, self.action, self.p)

    def evaluate(self, blocks, z):
        """Value on basis arguments: ``blocks`` are (n-1)-tuples (0-based, any order), ``z`` an index.

        Returns a Fraction (trivial) or a list of d Fractions (adjoint).
        """
        if len(blocks) != self.p:
            raise CohomologyError(f"expected {self.p} blocks")
        W = self.layout.W
        idx = []
        sign = 1
        for b in blocks:
            k, s = W.canonical(b)
            if s == 0:
                return self._zero_value()
            idx.append(k)
            sign *= s
        full = self.full()
        v = full[tuple(idx) + (z,)]
        if self.action == "adjoint":
            return [sign * x for x in v]
        return sign * v

    def _zero_value(self):
        return [Fraction(0)] * self.algebra.d if self.action == "adjoint" else Fraction(0)

    def entries(self):
        """Nonzero reduced coordinates as ``(blocks, z, value_index, value)`` with 0-based indices."""
        layout = self.layout
        out = []
        for key in np.ndindex(self.values.shape):
            v = self.values[key]
            if not v:
                continue
            j = None
            if self.action == "adjoint":
                key, j = key[:-1], key[-1]
            if self.p == 0:
                blocks, z = [], key[0]
            else:
                S = layout.N[key[-1]]
                blocks = [layout.W[k] for k in key[:-1]] + [S[:-1]]
                z = S[-1]
            out.append((blocks, z, j, v))
        return out


def _to_int(values):
    """Scale an object array of Fractions to integers: returns (int array, denominator)."""
    flat = values.reshape(-1)
    den = common_denominator(flat)
    ints = [int(v * den) for v in flat]
    big = max((abs(x) for x in ints), default=0)
    dtype = np.int64 if big < 2 ** 40 else object
    return np.array(ints, dtype=dtype).reshape(values.shape), den


def _to_int_expanded(layout, values, action, p):
    """Integer-scale reduced coordinates, then expand to the full argument tensor."""
    ints, den = _to_int(values)
    return layout.expand(ints, action, p), den


# ---------------------------------------------------------------------------
# coboundary
# ---------------------------------------------------------------------------

_X = "abcdefgh"


def _sparse_term(out, sign, alpha, sub, table, nz):
    """``out += sign * einsum(sub, alpha, table)`` looping over the nonzeros of ``table``.

    Every table letter is either summed (shared with ``alpha``) or free
    (shared with the output), never both.
    """
    lhs, out_sub = sub.split("->")
    a_sub, t_sub = lhs.split(",")
    a_rest = [c for c in a_sub if c not in t_sub]
    o_rest = [c for c in out_sub if c not in t_sub]
    perm = [a_rest.index(c) for c in o_rest]
    for idx in nz:
        fixed = dict(zip(t_sub, idx))
        a_ix = tuple(fixed.get(c, slice(None)) for c in a_sub)
        o_ix = tuple(fixed.get(c, slice(None)) for c in out_sub)
        out[o_ix] += (sign * table[idx]) * alpha[a_ix].transpose(perm)


def _delta_full(A: NLieAlgebra, action: str, p: int, alpha):
    """Integer coboundary on full tensors with a leading batch axis.

    Returns an array of shape ``(batch,) + full_shape(action, p + 1)``;
    the true coboundary is this divided by ``tables.D``.  The structure
    tables are very sparse, so each term is accumulated slice by slice.
    """
    tabs = int_tables(A, "wedge")
    layout = CochainLayout.of(A)
    xs = list(_X[: p + 1])
    adj = action == "adjoint"
    o = "o" if adj else ""
    out_sub = "Q" + "".join(xs) + "z" + o
    terms = []
    # compositions X_i . X_k replacing X_k
    for i in range(p + 1):
        for k in range(i + 1, p + 1):
            args = [("u" if m == k else xs[m]) for m in range(p + 1) if m != i]
            terms.append(((-1) ** (i + 1), f"Q{''.join(args)}z{o},{xs[i]}{xs[k]}u->{out_sub}", "comp"))
    # X_i acting on the last argument
    for i in range(p + 1):
        args = [xs[m] for m in range(p + 1) if m != i]
        terms.append(((-1) ** (i + 1), f"Q{''.join(args)}y{o},{xs[i]}zy->{out_sub}", "ad"))
    if adj:
        # X_i acting on the value
        for i in range(p + 1):
            args = [xs[m] for m in range(p + 1) if m != i]
            terms.append(((-1) ** i, f"Q{''.join(args)}zj,{xs[i]}jo->{out_sub}", "ad"))
        # (alpha(X_1..X_p, .) . X_{p+1}) . Z
        terms.append(((-1) ** p, f"Q{''.join(xs[:p])}yv,{xs[p]}yvzo->{out_sub}", "slot"))
    nz = {name: [tuple(int(i) for i in ix) for ix in np.argwhere(getattr(tabs, name))]
          for name in ("ad", "comp", "slot")}
    weight = sum(sum(abs(int(getattr(tabs, name)[ix])) for ix in nz[name]) for _, _, name in terms)
    big = int(np.abs(alpha).max()) if alpha.size else 0
    if alpha.dtype == object or big * max(1, weight) >= _INT_LIMIT:
        alpha = alpha.astype(object)
    shape = (alpha.shape[0],) + layout.full_shape(action, p + 1)
    out = np.zeros(shape, dtype=alpha.dtype)
    if alpha.dtype == object:
        out[...] = 0
    for sign, sub, name in terms:
        table = getattr(tabs, name)
        if alpha.dtype == object:
            table = table.astype(object)
        _sparse_term(out, sign, alpha, sub, table, nz[name])
    return out


def _fractions(ints, total):
    zero = Fraction(0)
    return [Fraction(int(x), total) if x else zero for x in ints.reshape(-1)]


def _delta_int(c: Cochain):
    ints, den = _to_int_expanded(c.layout, c.values, c.action, c.p)
    out = _delta_full(c.algebra, c.action, c.p, ints[None])
    return out, den * int_tables(c.algebra, "wedge").D


def coboundary(c: Cochain) -> Cochain:
    """``delta c``: a cochain of degree p + 1 for the same action.

    The result is read from canonical representatives; its membership in
    the cochain symmetry class is verified on every argument tuple, and a
    violation raises :class:`CohomologyError`.
    """
    A, action, p = c.algebra, c.action, c.p
    layout = c.layout
    out, total = _delta_int(c)
    red = layout.reduce(out, action, p + 1, batch=True)
    back = layout.expand(red, action, p + 1, batch=True)
    if not np.array_equal(back, out):
        bad = np.argwhere(back != out)[0]
        log.error("coboundary image leaves the antisymmetric cochain class at %s", bad.tolist())
        raise CohomologyError(
            f"delta of a degree-{p} {action} cochain is not antisymmetric in its last n arguments")
    return Cochain(A, action, p + 1, _fractions(red[0], total))


def coboundary_full(c: Cochain):
    """``delta c`` on every argument tuple, as an object array of Fractions (no class projection)."""
    out, total = _delta_int(c)
    arr = np.empty(out[0].size, dtype=object)
    arr[:] = _fractions(out[0], total)
    return arr.reshape(out.shape[1:])


def is_cocycle(c: Cochain) -> bool:
    out, _ = _delta_int(c)
    return not np.any(out)


@dataclass
class NilpotencyReport:
    passed: bool
    trials: int
    failures: int
    action: str
    p: int

    def to_json(self):
        return {"passed": self.passed, "trials": self.trials, "failures": self.failures,
                "action": self.action, "p": self.p}


def check_nilpotency(A: NLieAlgebra, action: str, p: int, trials: int = 100, seed: int = 0) -> NilpotencyReport:
    """``delta(delta c) == 0`` exactly for random rational p-cochains (all argument tuples checked)."""
    rng = random.Random(seed)
    layout = CochainLayout.of(A)
    failures = 0
    batch = []
    dens = []
    for _ in range(trials):
        c = Cochain.random(A, action, p, rng)
        ints, den = _to_int_expanded(layout, c.values, action, p)
        batch.append(ints)
        dens.append(den)
    if trials:
        alpha = np.stack(batch)
        once = _delta_full(A, action, p, alpha)
        red = layout.reduce(once, action, p + 1, batch=True)
        if not np.array_equal(layout.expand(red, action, p + 1, batch=True), once):
            raise CohomologyError("coboundary image leaves the cochain class")
        full2 = layout.expand(red, action, p + 1, batch=True)
        twice = _delta_full(A, action, p + 1, full2)
        failures = int(sum(1 for t in range(trials) if np.any(twice[t] != 0)))
    return NilpotencyReport(failures == 0, trials, failures, action, p)


# ---------------------------------------------------------------------------
# cohomology dimensions
# ---------------------------------------------------------------------------

def _delta_reducer(A: NLieAlgebra, action: str, p: int) -> RowReducer:
    """Row echelon form of the matrix of ``delta^p`` (rows: all argument tuples of degree p + 1)."""
    key = ("delta_rows", action, p)
    if key in A._cache:
        return A._cache[key]
    layout = CochainLayout.of(A)
    dim = layout.dim(action, p)
    red = RowReducer(dim)
    chunk = max(1, min(dim, 2_000_000 // max(1, int(np.prod(layout.full_shape(action, p + 1))))))
    columns = []
    for start in range(0, dim, chunk):
        stop = min(dim, start + chunk)
        eye = np.zeros((stop - start, dim), dtype=np.int64)
        eye[np.arange(stop - start), np.arange(start, stop)] = 1
        reduced = eye.reshape((stop - start,) + layout.reduced_shape(action, p))
        full = layout.expand(reduced, action, p, batch=True)
        out = _delta_full(A, action, p, full)
        columns.append(out.reshape(stop - start, -1))
    M = np.concatenate(columns, axis=0).T  # rows: argument tuples, cols: coordinates
    M = M[np.any(M != 0, axis=1)]
    if len(M):
        M = np.unique(M, axis=0)
        nnz = np.count_nonzero(M, axis=1)
        M = M[np.argsort(nnz, kind="stable")]
    for row in M:
        nzc = np.flatnonzero(row)
        red.add({int(j): int(row[j]) for j in nzc})
        if red.rank == dim:
            break
    A._cache[key] = red
    return red


def _image_reducer(A: NLieAlgebra, action: str, p: int) -> RowReducer:
    """Echelon form of the image of ``delta^p`` inside reduced degree-(p+1) coordinates."""
    key = ("delta_image", action, p)
    if key in A._cache:
        return A._cache[key]
    layout = CochainLayout.of(A)
    dim = layout.dim(action, p)
    red = RowReducer(layout.dim(action, p + 1))
    for k in range(dim):
        img = coboundary(Cochain.basis(A, action, p, k))
        den = common_denominator(img.flat())
        red.add({i: int(v * den) for i, v in enumerate(img.flat()) if v})
    A._cache[key] = red
    return red


@dataclass(frozen=True)
class CohomologyDims:
    dimC: int
    dimZ: int
    dimB: int
    dimH: int

    def as_tuple(self):
        return (self.dimZ, self.dimB, self.dimH)

    def to_json(self):
        return {"dimC": self.dimC, "dimZ": self.dimZ, "dimB": self.dimB, "dimH": self.dimH}


def cohomology_dims(A: NLieAlgebra, action: str, p: int) -> CohomologyDims:
    """``(dim Z^p, dim B^p, dim H^p)`` by exact rank of the coboundary matrices, for p in 0..2."""
    if action not in ACTIONS:
        raise CohomologyError(f"unknown action {action!r}")
    if not 0 <= p <= MAX_DEGREE:
        raise CohomologyError(f"degree {p} unsupported (0..{MAX_DEGREE})")
    layout = CochainLayout.of(A)
    dimC = layout.dim(action, p)
    dimZ = dimC - _delta_reducer(A, action, p).rank
    dimB = 0 if p == 0 else _delta_reducer(A, action, p - 1).rank
    return CohomologyDims(dimC, dimZ, dimB, dimZ - dimB)


def cocycle_basis(A: NLieAlgebra, action: str, p: int) -> list[Cochain]:
    """Basis of ``Z^p`` from the exact kernel of the coboundary matrix."""
    return [Cochain(A, action, p, v) for v in _delta_reducer(A, action, p).kernel()]


def _int_cocycle_basis(A, action, p):
    key = ("cocycle_int", action, p)
    if key not in A._cache:
        rows = []
        for v in _delta_reducer(A, action, p).kernel():
            den = common_denominator(v)
            rows.append([int(x * den) for x in v])
        dim = CochainLayout.of(A).dim(action, p)
        A._cache[key] = np.array(rows, dtype=object).reshape(len(rows), dim)
    return A._cache[key]


def random_cocycle(A: NLieAlgebra, action: str, p: int, rng: random.Random, span: int = 3) -> Cochain:
    """Random rational combination of the cocycle basis (coefficients ``a/b`` with ``|a|, b <= span``)."""
    K = _int_cocycle_basis(A, action, p)
    coeffs = [Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(K.shape[0])]
    den = common_denominator(coeffs)
    nums = np.array([int(c * den) for c in coeffs], dtype=object)
    ints = nums @ K if len(nums) else np.zeros(K.shape[1], dtype=object)
    return Cochain(A, action, p, _fractions(np.asarray(ints), den))


def is_coboundary(c: Cochain) -> bool:
    """Membership of ``c`` in ``B^p`` (image of ``delta^{p-1}``)."""
    if c.p == 0:
        return c.is_zero()
    red = _image_reducer(c.algebra, c.action, c.p - 1)
    flat = c.flat()
    den = common_denominator(flat)
    return not red.reduce({i: int(v * den) for i, v in enumerate(flat) if v})


# ---------------------------------------------------------------------------
# simple algebras: dual coordinates and trivializers
# ---------------------------------------------------------------------------

def _require_simple(A: NLieAlgebra):
    sig = read_signature(A)
    if sig is None:
        raise CohomologyError("algebra is not one of the simple algebras A_{n+1}")
    return sig


def _complement_index(layout: CochainLayout, k: int) -> int:
    return layout.N.index_of(tuple(j for j in range(layout.d) if j != k))


def dual_coordinates(A: NLieAlgebra, c: Cochain) -> list[list[Fraction]]:
    """``D[j][i] = (1/n!) sum epsilon_{i1..in i} c^j_{i1..in}`` for an adjoint 1-cochain on a simple algebra.

    Only the n-subset complementary to ``i`` contributes, so the n!
    permutation terms collapse to one.
    """
    _require_simple(A)
    if c.action != "adjoint" or c.p != 1:
        raise CohomologyError("dual coordinates need an adjoint 1-cochain")
    layout = c.layout
    d = A.d
    out = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        S = _complement_index(layout, i)
        # the n! orderings of S each contribute the same signed term
        e = perm_sign(layout.N[S] + (i,))
        for j in range(d):
            out[j][i] = e * c.values[S, j]
    return out


def from_dual_coordinates(A: NLieAlgebra, D) -> Cochain:
    """Inverse of :func:`dual_coordinates`: ``c^j_{i1..in} = sum_i epsilon_{i1..in i} D[j][i]``."""
    _require_simple(A)
    layout = CochainLayout.of(A)
    d = A.d
    vals = np.empty(layout.reduced_shape("adjoint", 1), dtype=object)
    vals[...] = Fraction(0)
    for S, idx in enumerate(layout.N):
        for j in range(d):
            acc = Fraction(0)
            for i in range(d):
                e = perm_sign(idx + (i,))
                if e:
                    acc += e * Fraction(D[j][i])
            vals[S, j] = acc
    return Cochain(A, "adjoint", 1, vals)


def is_cocycle_symmetric_test(A: NLieAlgebra, c: Cochain):
    """``(is_cocycle, dual coordinates symmetric)`` computed by independent routes."""
    cocycle = is_cocycle(c)
    D = dual_coordinates(A, c)
    sym = all(D[i][j] == D[j][i] for i in range(A.d) for j in range(A.d))
    return cocycle, sym


_TRIVIAL_SIGN: dict = {}


def _trivial_simple_raw(A: NLieAlgebra, sig, alpha_S, sign: int) -> list[Fraction]:
    """``beta_k = s * eps_k * epsilon_{(S_k, k)} * alpha_{S_k}`` with S_k the complement of k."""
    layout = CochainLayout.of(A)
    beta = []
    for k in range(A.d):
        S = _complement_index(layout, k)
        e = perm_sign(layout.N[S] + (k,))
        beta.append(sign * sig[k] * e * Fraction(alpha_S[S]))
    return beta


def trivial_simple_sign(A: NLieAlgebra) -> int:
    """Global sign of the trivial-action trivializer, fixed once per (n, signature) by self-check."""
    sig = _require_simple(A)
    key = (A.n, sig)
    if key not in _TRIVIAL_SIGN:
        layout = CochainLayout.of(A)
        found = None
        for s in (1, -1):
            ok = True
            for S in range(len(layout.N)):
                c = Cochain.basis(A, "trivial", 1, S)
                beta = Cochain(A, "trivial", 0, _trivial_simple_raw(A, sig, c.flat(), s))
                if coboundary(beta) != c:
                    ok = False
                    break
            if ok:
                found = s
                break
        if found is None:
            raise CohomologyError("trivializer self-check failed for both signs")
        _TRIVIAL_SIGN[key] = found
    return _TRIVIAL_SIGN[key]


def trivialize_trivial_simple(A: NLieAlgebra, c: Cochain) -> Cochain:
    """Zero-cochain ``beta`` with ``delta beta = c`` for a trivial-action 1-cochain on a simple algebra."""
    sig = _require_simple(A)
    if c.action != "trivial" or c.p != 1:
        raise CohomologyError("expected a trivial-action 1-cochain")
    s = trivial_simple_sign(A)
    return Cochain(A, "trivial", 0, _trivial_simple_raw(A, sig, c.flat(), s))


def _adjoint_simple_beta(A, sig, D) -> list[list[Fraction]]:
    """``beta[j][k] = ((-1)^(n+1) / 2) * (eps_k D[j][k] - delta_jk * tau / (n - 1))``, ``tau = sum_s eps_s D[s][s]``."""
    n, d = A.n, A.d
    tau = sum((sig[s] * D[s][s] for s in range(d)), Fraction(0))
    half = Fraction((-1) ** (n + 1), 2)
    return [[half * (sig[k] * D[j][k] - (tau / (n - 1) if j == k else 0)) for k in range(d)] for j in range(d)]


def zero_cochain_from_matrix(A, B) -> Cochain:
    """Adjoint 0-cochain with ``beta(e_k) = sum_j B[j][k] e_j``."""
    d = A.d
    return Cochain(A, "adjoint", 0, [B[j][k] for k in range(d) for j in range(d)])


def zero_cochain_matrix(beta: Cochain):
    d = beta.algebra.d
    return [[beta.values[k, j] for k in range(d)] for j in range(d)]


def trivialize_adjoint_simple(A: NLieAlgebra, c: Cochain) -> Cochain:
    """Adjoint zero-cochain ``beta`` with ``delta beta = c`` for an adjoint 1-cocycle on a simple algebra."""
    sig = _require_simple(A)
    if c.action != "adjoint" or c.p != 1:
        raise CohomologyError("expected an adjoint 1-cochain")
    cocycle, sym = is_cocycle_symmetric_test(A, c)
    if not cocycle:
        raise CohomologyError("input is not a cocycle")
    B = _adjoint_simple_beta(A, sig, dual_coordinates(A, c))
    beta = zero_cochain_from_matrix(A, B)
    if coboundary(beta) != c:
        raise CohomologyError("adjoint trivializer self-check failed")
    return beta


# ---------------------------------------------------------------------------
# semisimple assembly
# ---------------------------------------------------------------------------

def _block_algebras(A: NLieAlgebra):
    blocks = blocks_of(A)
    algs = []
    for lo, hi in blocks:
        sub = A.restrict(lo, hi)
        sig = read_signature(sub)
        if sig is None:
            raise CohomologyError(f"ideal block {lo + 1}..{hi} is not a simple algebra A_(n+1)")
        algs.append(NLieAlgebra(sub.n, sub.d, sub.f, ideals=((0, sub.d),), signature=sig))
    return blocks, algs


def _restrict_trivial(c: Cochain, lo, hi, block_alg, value=None) -> Cochain:
    """Scalar 1-cochain on a block: arguments in ``lo..hi-1`` (and value component ``value`` if adjoint)."""
    layout = c.layout
    blayout = CochainLayout.of(block_alg)
    vals = []
    for S in blayout.N:
        k = layout.N.index_of(tuple(i + lo for i in S))
        vals.append(c.values[k] if value is None else c.values[k, value])
    return Cochain(block_alg, "trivial", 1, vals)


def _restrict_adjoint(c: Cochain, lo, hi, block_alg) -> Cochain:
    layout = c.layout
    blayout = CochainLayout.of(block_alg)
    vals = []
    for S in blayout.N:
        k = layout.N.index_of(tuple(i + lo for i in S))
        for j in range(hi - lo):
            vals.append(c.values[k, j + lo])
    return Cochain(block_alg, "adjoint", 1, vals)


def trivialize_semisimple(A: NLieAlgebra, c: Cochain, action: str | None = None) -> Cochain:
    """Assemble a zero-cochain ``beta`` with ``delta beta = c`` from per-ideal trivializers.

    Trivial action: one scalar trivializer per ideal, applied to the
    restriction of ``c`` to that ideal.  Adjoint action: the diagonal
    parts use the adjoint simple trivializer and each off-diagonal value
    component (values in ideal t, arguments in ideal s) the trivial one.
    The result is verified exactly.
    """
    action = action or c.action
    if c.action != action or c.p != 1:
        raise CohomologyError("expected a 1-cochain of the given action")
    blocks, algs = _block_algebras(A)
    if not is_cocycle(c):
        raise CohomologyError("input is not a cocycle")
    d = A.d
    if action == "trivial":
        beta = [Fraction(0)] * d
        for (lo, hi), alg in zip(blocks, algs):
            part = trivialize_trivial_simple(alg, _restrict_trivial(c, lo, hi, alg))
            for i, v in enumerate(part.flat()):
                beta[lo + i] = v
        out = Cochain(A, "trivial", 0, beta)
    else:
        B = [[Fraction(0)] * d for _ in range(d)]
        for (lo, hi), alg in zip(blocks, algs):
            diag = trivialize_adjoint_simple(alg, _restrict_adjoint(c, lo, hi, alg))
            Bs = zero_cochain_matrix(diag)
            for j in range(hi - lo):
                for k in range(hi - lo):
                    B[lo + j][lo + k] = Bs[j][k]
            for (tlo, thi) in blocks:
                if (tlo, thi) == (lo, hi):
                    continue
                for j in range(tlo, thi):
                    part = trivialize_trivial_simple(alg, _restrict_trivial(c, lo, hi, alg, value=j))
                    for k, v in enumerate(part.flat()):
                        B[j][lo + k] = v
        out = zero_cochain_from_matrix(A, B)
    if coboundary(out) != c:
        raise CohomologyError("assembled trivializer does not generate the cocycle")
    return out


def trivialize(A: NLieAlgebra, c: Cochain) -> Cochain:
    """Dispatch to the simple or semisimple trivializer."""
    if read_signature(A) is not None:
        if c.action == "trivial":
            return trivialize_trivial_simple(A, c)
        return trivialize_adjoint_simple(A, c)
    return trivialize_semisimple(A, c)
