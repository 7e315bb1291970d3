"""n-Lie (Filippov) algebras given by structure constants.

Basis indices are 0-based inside the library and 1-based in every
external format (JSON, CLI, reports).  Structure constants live on
strictly increasing index tuples and are expanded by antisymmetry on
read, so an inconsistent tensor cannot be built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .linalg import RowReducer, common_denominator, perm_sign, span_basis, wedge_expand


class AlgebraError(ValueError):
    """Malformed algebra data or an operation outside its domain."""


def _axpy(acc: dict, c, vec: Mapping):
    for k, v in vec.items():
        nv = acc.get(k, 0) + c * v
        if nv == 0:
            acc.pop(k, None)
        else:
            acc[k] = nv
    return acc


def sparse(vec: Sequence) -> dict[int, Fraction]:
    return {i: Fraction(x) for i, x in enumerate(vec) if x}


def dense(vec: Mapping, d: int, zero=Fraction(0)) -> list:
    return [vec.get(i, zero) for i in range(d)]


def default_names(d: int, letter: str = "e") -> tuple[str, ...]:
    return tuple(f"{letter}{i + 1}" for i in range(d))


class NLieAlgebra:
    """A Filippov algebra of arity ``n`` and dimension ``d``.

    ``f`` maps strictly increasing 0-based n-tuples to sparse target
    vectors ``{b: coefficient}``.  ``ideals`` is an optional declared
    decomposition into consecutive index blocks ``(lo, hi)`` (0-based,
    half open).  ``signature`` is recorded for algebras built by
    :func:`simple_algebra`.
    """

    def __init__(self, n: int, d: int, f: Mapping, *, ideals=None, signature=None, names=None):
        if n < 2:
            raise AlgebraError("arity must be at least 2")
        if d < 1:
            raise AlgebraError("dimension must be at least 1")
        consts: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for idx, target in f.items():
            idx = tuple(idx)
            if len(idx) != n or any(not 0 <= i < d for i in idx):
                raise AlgebraError(f"bad structure-constant index {idx}")
            canon, sign = wedge_expand(idx)
            if sign == 0:
                if any(target.values()):
                    raise AlgebraError(f"nonzero bracket on repeated indices {idx}")
                continue
            slot = consts.setdefault(canon, {})
            for b, c in target.items():
                if not 0 <= b < d:
                    raise AlgebraError(f"bad target index {b}")
                c = Fraction(c) * sign
                if c:
                    if b in slot and slot[b] != c:
                        raise AlgebraError(f"conflicting constants at {idx}")
                    slot[b] = c
            if not slot:
                del consts[canon]
        self.n = n
        self.d = d
        self.f = consts
        if ideals is not None:
            ideals = tuple((int(lo), int(hi)) for lo, hi in ideals)
            covered = [i for lo, hi in ideals for i in range(lo, hi)]
            if sorted(covered) != list(range(d)) or len(covered) != d:
                raise AlgebraError("ideal blocks must partition the basis")
        self.ideals = ideals
        if signature is not None:
            signature = tuple(int(s) for s in signature)
        self.signature = signature
        self.names = tuple(names) if names is not None else default_names(d)
        if len(self.names) != d:
            raise AlgebraError("basis name count does not match dimension")
        self._cache: dict = {}

    def __repr__(self):
        return f"NLieAlgebra(n={self.n}, d={self.d}, nonzero={len(self.f)})"

    def __eq__(self, other):
        if not isinstance(other, NLieAlgebra):
            return NotImplemented
        return (self.n, self.d, self.f, self.ideals, self.signature, self.names) == (
            other.n, other.d, other.f, other.ideals, other.signature, other.names)

    __hash__ = object.__hash__

    antisymmetric = True

    # -- evaluation ---------------------------------------------------------

    def bracket_basis(self, idx: Sequence[int]) -> dict[int, Fraction]:
        """Bracket of basis vectors ``e_{idx[0]}, ..., e_{idx[n-1]}`` as a sparse vector."""
        canon, sign = wedge_expand(idx)
        if sign == 0:
            return {}
        target = self.f.get(canon)
        if not target:
            return {}
        if sign == 1:
            return dict(target)
        return {b: -c for b, c in target.items()}

    def bracket_sparse(self, *vectors: Mapping) -> dict:
        if len(vectors) != self.n:
            raise AlgebraError(f"bracket takes {self.n} arguments")
        out: dict = {}
        for combo in itertools.product(*(v.items() for v in vectors)):
            idx = tuple(i for i, _ in combo)
            coeff = 1
            for _, c in combo:
                coeff = coeff * c
            if coeff == 0:
                continue
            target = self.bracket_basis(idx)
            if target:
                _axpy(out, coeff, target)
        return out

    def bracket(self, *vectors: Sequence) -> list[Fraction]:
        """Multilinear bracket of coordinate vectors of length ``d``."""
        for v in vectors:
            if len(v) != self.d:
                raise AlgebraError("dimension mismatch")
        return dense(self.bracket_sparse(*(sparse(v) for v in vectors)), self.d)

    def basis_vector(self, i: int) -> list[Fraction]:
        return [Fraction(int(j == i)) for j in range(self.d)]

    def ad_basis(self, x: Sequence[int], z: int) -> dict[int, Fraction]:
        return self.bracket_basis(tuple(x) + (z,))

    # -- integer tensor backend --------------------------------------------

    def int_tensor(self):
        """Dense tensor ``T[a1, ..., an, b]`` scaled to integers.

        Returns ``(T, D)`` with ``T / D`` the structure constants.
        """
        if "int_tensor" not in self._cache:
            D = common_denominator(c for t in self.f.values() for c in t.values())
            T = np.zeros((self.d,) * (self.n + 1), dtype=np.int64)
            for canon, target in self.f.items():
                for perm in itertools.permutations(range(self.n)):
                    idx = tuple(canon[p] for p in perm)
                    s = perm_sign(perm)
                    for b, c in target.items():
                        T[idx + (b,)] = s * int(c * D)
            self._cache["int_tensor"] = (T, D)
        return self._cache["int_tensor"]

    def restrict(self, lo: int, hi: int) -> "NLieAlgebra":
        """Structure constants restricted to the block ``lo..hi-1`` (a subalgebra if it is an ideal)."""
        f = {}
        for canon, target in self.f.items():
            if all(lo <= i < hi for i in canon):
                f[tuple(i - lo for i in canon)] = {b - lo: c for b, c in target.items() if lo <= b < hi}
        return NLieAlgebra(self.n, hi - lo, f, names=self.names[lo:hi])


# ---------------------------------------------------------------------------
# Filippov identity
# ---------------------------------------------------------------------------

@dataclass
class FIReport:
    passed: bool
    checked: int
    violations: int = 0
    worst_case: dict | None = None

    def to_json(self):
        return {
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.violations,
            "worst_case": self.worst_case,
        }


def derivation_residual(bracket_basis, d: int, x: Sequence[int], y: Sequence[int], inner=None) -> dict:
    """LHS minus RHS of the derivation identity for basis tuples ``x`` (n-1) and ``y`` (n).

    ``[x, [y]] - sum_a [y_1, ..., [x, y_a], ..., y_n]``.  Works for any
    coefficient ring supporting ``+``, ``*`` and comparison with 0.  With
    ``inner`` given, the inner brackets use it and the outer ones use
    ``bracket_basis`` (the mixed terms of a perturbed bracket).
    """
    inner = inner or bracket_basis
    x = tuple(x)
    res: dict = {}
    for b, c in inner(tuple(y)).items():
        _axpy(res, c, bracket_basis(x + (b,)))
    for a, ya in enumerate(y):
        for w, c in inner(x + (ya,)).items():
            _axpy(res, -c, bracket_basis(tuple(y[:a]) + (w,) + tuple(y[a + 1:])))
    return res


def _format_vec(vec: Mapping) -> dict:
    return {str(k + 1): str(v) for k, v in sorted(vec.items())}


def check_fi(A) -> FIReport:
    """Evaluate the Filippov (or n-Leibniz) identity on all canonical basis tuples.

    For antisymmetric brackets the ``x`` block ranges over (n-1)-subsets
    and ``y`` over n-subsets; otherwise over all tuples.
    """
    n, d = A.n, A.d
    if A.antisymmetric:
        xs = itertools.combinations(range(d), n - 1)
        ys = list(itertools.combinations(range(d), n))
    else:
        xs = itertools.product(range(d), repeat=n - 1)
        ys = list(itertools.product(range(d), repeat=n))
    checked = 0
    violations = 0
    worst = None
    for x in xs:
        for y in ys:
            checked += 1
            res = derivation_residual(A.bracket_basis, d, x, y)
            if res:
                violations += 1
                if worst is None:
                    worst = {
                        "x": [i + 1 for i in x],
                        "y": [i + 1 for i in y],
                        "residual": _format_vec(res),
                    }
    return FIReport(passed=violations == 0, checked=checked, violations=violations, worst_case=worst)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def simple_algebra(n: int, signature: Sequence[int]) -> NLieAlgebra:
    """The simple (n+1)-dimensional algebra with ``[e_1 .. ^e_i .. e_{n+1}] = (-1)^(i+1) eps_i e_i``."""
    signature = tuple(signature)
    if len(signature) != n + 1:
        raise AlgebraError(f"signature must have {n + 1} entries")
    if any(s not in (1, -1) for s in signature):
        raise AlgebraError("signature entries must be +1 or -1")
    f = {}
    for i in range(n + 1):
        idx = tuple(j for j in range(n + 1) if j != i)
        # 1-based i+1: sign (-1)^(i+2) == (-1)^i
        f[idx] = {i: Fraction((-1) ** i * signature[i])}
    return NLieAlgebra(n, n + 1, f, ideals=((0, n + 1),), signature=signature)


def simple_algebra_epsilon_form(n: int, signature: Sequence[int]) -> NLieAlgebra:
    """Same algebra built from ``(-1)^n sum_i eps_i epsilon_{i1..in i} e_i`` on every n-subset."""
    f = {}
    for idx in itertools.combinations(range(n + 1), n):
        target = {}
        for i in range(n + 1):
            e = perm_sign(idx + (i,))
            if e:
                target[i] = Fraction((-1) ** n * signature[i] * e)
        f[idx] = target
    return NLieAlgebra(n, n + 1, f, signature=signature)


def parse_signature(text: str) -> tuple[int, ...]:
    sig = []
    for ch in text.strip():
        if ch == "+":
            sig.append(1)
        elif ch == "-":
            sig.append(-1)
        else:
            raise AlgebraError(f"bad signature character {ch!r}")
    return tuple(sig)


def abelian_algebra(n: int, d: int) -> NLieAlgebra:
    return NLieAlgebra(n, d, {})


def direct_sum(parts: Sequence[NLieAlgebra]) -> NLieAlgebra:
    """Block-diagonal sum; the blocks become the declared ideal decomposition."""
    if not parts:
        raise AlgebraError("empty direct sum")
    n = parts[0].n
    if any(p.n != n for p in parts):
        raise AlgebraError("arity mismatch in direct sum")
    if len(parts) == 1:
        return parts[0]
    f = {}
    ideals = []
    names = []
    offset = 0
    for k, p in enumerate(parts):
        for canon, target in p.f.items():
            f[tuple(i + offset for i in canon)] = {b + offset: c for b, c in target.items()}
        if p.ideals:
            ideals.extend((lo + offset, hi + offset) for lo, hi in p.ideals)
        else:
            ideals.append((offset, offset + p.d))
        if p.names == default_names(p.d):
            names.extend(default_names(p.d, chr(ord("e") + k)))
        else:
            names.extend(p.names)
        offset += p.d
    if len(set(names)) != len(names):
        names = None
    return NLieAlgebra(n, offset, f, ideals=ideals, names=names)


def read_signature(A: NLieAlgebra) -> tuple[int, ...] | None:
    """Recover the signature if ``A`` has exactly the simple-algebra constants, else None."""
    n, d = A.n, A.d
    if d != n + 1:
        return None
    sig = []
    for i in range(d):
        idx = tuple(j for j in range(d) if j != i)
        target = A.f.get(idx, {})
        if set(target) != {i}:
            return None
        c = target[i] * (-1) ** i
        if c not in (1, -1):
            return None
        sig.append(int(c))
    if len(A.f) != d:
        return None
    return tuple(sig)


def blocks_of(A: NLieAlgebra):
    """Declared ideal blocks, defaulting to the whole space."""
    return A.ideals if A.ideals else ((0, A.d),)


def cross_block_brackets_vanish(A: NLieAlgebra) -> bool:
    block = {}
    for k, (lo, hi) in enumerate(blocks_of(A)):
        for i in range(lo, hi):
            block[i] = k
    for canon, target in A.f.items():
        ks = {block[i] for i in canon}
        if len(ks) > 1:
            return False
        (k,) = ks
        if any(block[b] != k for b in target):
            return False
    return True


# ---------------------------------------------------------------------------
# ideals and solvability
# ---------------------------------------------------------------------------

def _in_span(reducer: RowReducer, vec: Mapping) -> bool:
    return reducer.contains(dict(vec))


def _reducer_for(vectors, d) -> RowReducer:
    red = RowReducer(d)
    for v in vectors:
        red.add_rational(sparse(v))
    return red


def is_ideal(A: NLieAlgebra, subspace: Iterable[Sequence]) -> bool:
    """True iff ``[x_1, ..., x_{n-1}, z]`` stays in the span for basis ``x`` and spanning ``z``."""
    subspace = [tuple(Fraction(c) for c in v) for v in subspace]
    red = _reducer_for(subspace, A.d)
    for z in subspace:
        zs = sparse(z)
        for x in itertools.combinations(range(A.d), A.n - 1):
            out: dict = {}
            for j, c in zs.items():
                _axpy(out, c, A.ad_basis(x, j))
            if out and not _in_span(red, out):
                return False
    return True


def derived_series(A: NLieAlgebra, subspace: Iterable[Sequence] | None = None, k: int | None = None) -> list[int]:
    """Dimensions of the k-derived series of an ideal, until it stabilizes or vanishes.

    ``I^(m) = [I^(m-1) (k times), G (n-k times)]``; ``k = n`` is Filippov's
    series.  Raises :class:`AlgebraError` if ``subspace`` is not an ideal.
    """
    n, d = A.n, A.d
    if k is None:
        k = n
    if not 1 <= k <= n:
        raise AlgebraError("solvability order must lie in 1..n")
    if subspace is None:
        subspace = [A.basis_vector(i) for i in range(d)]
    current = span_basis(subspace)
    if not is_ideal(A, current):
        raise AlgebraError("subspace is not an ideal")
    dims = [len(current)]
    full = [sparse(A.basis_vector(i)) for i in range(d)]
    for _ in range(d + 1):
        if not current:
            break
        cur_sparse = [sparse(v) for v in current]
        produced = []
        for inner in itertools.combinations(range(len(cur_sparse)), k):
            for outer in itertools.combinations(range(d), n - k):
                args = [cur_sparse[i] for i in inner] + [full[j] for j in outer]
                out = A.bracket_sparse(*args)
                if out:
                    produced.append(dense(out, d))
        nxt = span_basis(produced)
        dims.append(len(nxt))
        if len(nxt) == len(current) or not nxt:
            break
        current = nxt
    return dims
