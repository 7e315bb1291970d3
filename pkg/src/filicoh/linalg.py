"""Exact rational linear algebra and multi-index combinatorics.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Two elimination routes are provided: a dense
Bareiss elimination on :class:`QMatrix`, and an incremental sparse
fraction-free :class:`RowReducer` used for the tall, sparse coboundary
matrices.  Both are exact; tests cross-check them against each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction


def Q(x, den=1) -> Fraction:
    return Fraction(x, den)


def common_denominator(values: Iterable) -> int:
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    return den


# ---------------------------------------------------------------------------
# permutations and wedge bases
# ---------------------------------------------------------------------------

def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    # count inversions by cycle decomposition of the sorting permutation
    order = sorted(range(len(seq)), key=seq.__getitem__)
    seen = [False] * len(seq)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def epsilon(indices: Sequence[int]) -> int:
    """Levi-Civita symbol: ``epsilon((1, 2, ..., m)) == 1``.

    Returns 0 on repeated indices, otherwise the sign of the permutation
    that sorts ``indices``.
    """
    return perm_sign(indices)


def wedge_expand(indices: Sequence[int]):
    """Canonicalize a decomposable wedge of basis indices.

    Returns ``(sorted tuple, sign)``, or ``(None, 0)`` when an index repeats.

    >>> wedge_expand((3, 1))
    ((1, 3), -1)
    """
    sign = perm_sign(indices)
    if sign == 0:
        return None, 0
    return tuple(sorted(indices)), sign


@dataclass(frozen=True)
class MultiIndexBasis:
    """Ordered basis of k-blocks over d indices (0-based internally).

    ``mode='wedge'`` enumerates strictly increasing tuples (C(d, k) of them),
    ``mode='tensor'`` enumerates all d**k tuples in lexicographic order.
    """

    d: int
    k: int
    mode: str = "wedge"
    elements: tuple = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.mode == "wedge":
            elems = tuple(itertools.combinations(range(self.d), self.k))
        elif self.mode == "tensor":
            elems = tuple(itertools.product(range(self.d), repeat=self.k))
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(elems)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def index_of(self, t) -> int:
        return self._index[tuple(t)]

    def canonical(self, t):
        """Return ``(index, sign)`` of an arbitrary k-tuple; sign 0 if degenerate."""
        if self.mode == "tensor":
            return self._index[tuple(t)], 1
        canon, sign = wedge_expand(t)
        if sign == 0:
            return None, 0
        return self._index[canon], sign

    @property
    def expected_size(self) -> int:
        return comb(self.d, self.k) if self.mode == "wedge" else self.d ** self.k


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------

class QMatrix:
    """Dense row-major matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols: int | None = None):
        data = [tuple(Fraction(x) for x in row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = cols
        self.data = tuple(data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if isinstance(other, QMatrix):
            return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)
        return NotImplemented

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"QMatrix({[list(map(str, r)) for r in self.data]})"

    def __add__(self, other):
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __sub__(self, other):
        return QMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __neg__(self):
        return QMatrix([[-a for a in r] for r in self.data], self.cols)

    def scale(self, c):
        c = Fraction(c)
        return QMatrix([[c * a for a in r] for r in self.data], self.cols)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            cols_t = list(zip(*other.data)) if other.rows else [()] * other.cols
            return QMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols_t] for r in self.data],
                other.cols,
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.data]

    def transpose(self):
        return QMatrix([list(c) for c in zip(*self.data)] if self.rows else [], self.rows)

    def trace(self):
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def is_zero(self):
        return all(a == 0 for r in self.data for a in r)

    def is_diagonal(self):
        return all(a == 0 for i, r in enumerate(self.data) for j, a in enumerate(r) if i != j)

    def rank(self) -> int:
        return rank_kernel(self)[0]

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss(self)[2]


def _bareiss(A: QMatrix):
    """Fraction-free Bareiss elimination.

    Rows are first scaled to integers.  Returns ``(echelon rows, pivot
    columns, determinant)``; the determinant is only meaningful for
    square input.
    """
    scales = []
    M = []
    for row in A.data:
        den = common_denominator(row)
        scales.append(den)
        M.append([int(x * den) for x in row])
    rows, cols = A.rows, A.cols
    pivots = []
    prev = 1
    r = 0
    sign = 1
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        piv = M[r][c]
        for i in range(r + 1, rows):
            mic = M[i][c]
            Mi = M[i]
            Mr = M[r]
            for j in range(c + 1, cols):
                Mi[j] = (piv * Mi[j] - mic * Mr[j]) // prev
            Mi[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    if rows == cols and len(pivots) == rows:
        det = Fraction(sign * M[rows - 1][cols - 1])
        for s in scales:
            det /= s
    else:
        det = Fraction(0)
    return M[:r], pivots, det


def _kernel_from_echelon(echelon: list[dict[int, int]] | list[list[int]], pivots: list[int], cols: int):
    """Kernel basis from an echelon form with given pivot columns.

    ``echelon[i]`` has its leading nonzero entry in column ``pivots[i]``.
    Each kernel vector has a 1 in one free column and 0 in the others.
    """
    rows = [r if isinstance(r, dict) else {j: v for j, v in enumerate(r) if v} for r in echelon]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    order = sorted(range(len(pivots)), key=lambda i: -pivots[i])
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for i in order:
            row = rows[i]
            pc = pivots[i]
            acc = Fraction(0)
            for j, a in row.items():
                if j != pc and j in v:
                    acc += a * v[j]
            if acc:
                v[pc] = -acc / row[pc]
        basis.append(tuple(v.get(c, Fraction(0)) for c in range(cols)))
    return basis


def rank_kernel(A: QMatrix):
    """Exact rank and a kernel basis of ``A``.

    >>> rank_kernel(QMatrix([[1, 2], [2, 4]]))
    (1, [(Fraction(-2, 1), Fraction(1, 1))])
    """
    echelon, pivots, _ = _bareiss(A)
    return len(pivots), _kernel_from_echelon(echelon, pivots, A.cols)


def solve(A: QMatrix, b: Sequence) -> list[Fraction] | None:
    """One exact solution of ``A x = b``, or None if inconsistent."""
    aug = QMatrix([list(r) + [bi] for r, bi in zip(A.data, b)], A.cols + 1)
    echelon, pivots, _ = _bareiss(aug)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [Fraction(0)] * A.cols
    for i in reversed(range(len(pivots))):
        row = echelon[i]
        pc = pivots[i]
        acc = Fraction(row[A.cols])
        for j in range(pc + 1, A.cols):
            if row[j]:
                acc -= row[j] * x[j]
        x[pc] = acc / row[pc]
    return x


# ---------------------------------------------------------------------------
# sparse incremental elimination
# ---------------------------------------------------------------------------

def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class RowReducer:
    """Incremental fraction-free row echelon form over the integers.

    Rows are sparse ``{column: int}`` dicts, kept primitive (content 1).
    Adding a row reduces it against the current pivots; a nonzero
    remainder becomes a new pivot row.  ``rank`` is exact over Q.
    """

    def __init__(self, cols: int):
        self.cols = cols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        row = {k: v for k, v in row.items() if v}
        pivots = self.pivots
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                return row
            a = prow[c]
            b = row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: fa * v for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - fb * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
        return row

    def add(self, row: dict[int, int]) -> bool:
        """Add a row; returns True if it increased the rank."""
        rem = self.reduce(row)
        if not rem:
            return False
        self.pivots[min(rem)] = rem
        return True

    def add_rational(self, row: dict[int, Fraction]) -> bool:
        den = common_denominator(row.values())
        return self.add({k: int(v * den) for k, v in row.items()})

    def kernel(self) -> list[tuple[Fraction, ...]]:
        cols = sorted(self.pivots)
        return _kernel_from_echelon([self.pivots[c] for c in cols], cols, self.cols)

    def contains(self, row: dict[int, Fraction]) -> bool:
        den = common_denominator(row.values())
        return not self.reduce({k: int(v * den) for k, v in row.items()})


def span_basis(vectors: Iterable[Sequence]) -> list[tuple[Fraction, ...]]:
    """A basis (subset of the input, greedy order) of the span of ``vectors``."""
    basis = []
    red = None
    for v in vectors:
        v = tuple(Fraction(x) for x in v)
        if red is None:
            red = RowReducer(len(v))
        if red.add_rational({i: x for i, x in enumerate(v) if x}):
            basis.append(v)
    return basis


def rank_of_vectors(vectors: Iterable[Sequence]) -> int:
    return len(span_basis(vectors))
