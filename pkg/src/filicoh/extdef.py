"""Central extensions by one generator and polynomial deformations of Filippov algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import NLieAlgebra, _axpy, check_fi, derivation_residual, FIReport
from .cohomology import (
    Cochain,
    CochainLayout,
    is_cocycle,
    is_coboundary,
)
from .linalg import wedge_expand

XI = "Xi"


class ExtensionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# central extensions
# ---------------------------------------------------------------------------

@dataclass
class CentralExtension:
    base: NLieAlgebra
    cocycle: Cochain
    extended: NLieAlgebra
    fi: FIReport

    @property
    def xi(self) -> int:
        """Index of the central generator (the last basis vector)."""
        return self.base.d


def central_extend(A: NLieAlgebra, c: Cochain) -> CentralExtension:
    """Adjoin a central generator Xi with ``[e_S]~ = [e_S] + c(e_S) Xi``.

    Any cochain is accepted; the attached FI report passes exactly when
    ``c`` is a cocycle.
    """
    if c.action != "trivial" or c.p != 1 or c.algebra is not A:
        raise ExtensionError("central extensions need a trivial-action 1-cochain on the algebra")
    layout = c.layout
    f = {k: dict(v) for k, v in A.f.items()}
    for si, S in enumerate(layout.N):
        v = c.values[si]
        if v:
            f.setdefault(S, {})[A.d] = v
    ext = NLieAlgebra(A.n, A.d + 1, f, names=tuple(A.names) + (XI,))
    return CentralExtension(A, c, ext, check_fi(ext))


@dataclass
class TrivializationReport:
    success: bool
    residual: dict = field(default_factory=dict)
    algebra: NLieAlgebra | None = None

    def to_json(self):
        return {"success": self.success,
                "residual": {k: str(v) for k, v in self.residual.items()}}


def trivialize_extension(ext: CentralExtension, beta: Cochain) -> TrivializationReport:
    """Pass to ``e_i' = e_i - beta(e_i) Xi`` and check that Xi leaves every bracket.

    In the primed basis the Xi-coefficient of ``[e_S']`` is
    ``c(e_S) + beta([e_S])``, which vanishes for all S exactly when
    ``c = delta beta``.
    """
    A = ext.base
    if beta.action != "trivial" or beta.p != 0 or beta.algebra is not A:
        raise ExtensionError("expected a trivial-action 0-cochain on the base algebra")
    b = beta.flat()
    xi = ext.xi
    f = {}
    residual = {}
    for S in itertools.combinations(range(A.d), A.n):
        target = dict(ext.extended.bracket_basis(S))
        coeff = target.pop(xi, Fraction(0))
        coeff += sum((c * b[j] for j, c in target.items()), Fraction(0))
        if coeff:
            residual[",".join(str(i + 1) for i in S)] = coeff
            target[xi] = coeff
        if target:
            f[S] = target
    primed = NLieAlgebra(A.n, A.d + 1, f, names=tuple(n + "'" for n in A.names) + (XI,))
    return TrivializationReport(not residual, residual, primed)


# ---------------------------------------------------------------------------
# truncated polynomials
# ---------------------------------------------------------------------------

class TruncPoly:
    """Element of Q[t]/(t^(m+1)), stored as a coefficient tuple of length m+1."""

    __slots__ = ("c",)

    def __init__(self, coeffs, m: int | None = None):
        coeffs = [Fraction(x) for x in coeffs]
        if m is not None:
            coeffs = (coeffs + [Fraction(0)] * (m + 1))[: m + 1]
        self.c = tuple(coeffs)

    @property
    def m(self):
        return len(self.c) - 1

    @classmethod
    def const(cls, x, m):
        return cls([x], m)

    def _coerce(self, other):
        if isinstance(other, TruncPoly):
            if other.m != self.m:
                raise ValueError("truncation orders differ")
            return other
        return TruncPoly([other], self.m)

    def __add__(self, other):
        o = self._coerce(other)
        return TruncPoly([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        m = self.m
        out = [Fraction(0)] * (m + 1)
        for i, a in enumerate(self.c):
            if a:
                for j in range(m + 1 - i):
                    out[i + j] += a * o.c[j]
        return TruncPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TruncPoly):
            return self.c == other.c
        return self.c == self._coerce(other).c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return "TruncPoly(" + ", ".join(str(x) for x in self.c) + ")"


# ---------------------------------------------------------------------------
# deformations
# ---------------------------------------------------------------------------

@dataclass
class Deformation:
    """Structure constants ``f + t alpha1 + t^2 alpha2`` over Q[t]/(t^(m+1))."""

    base: NLieAlgebra
    order: int
    f: dict
    alpha1: Cochain
    alpha2: Cochain | None = None

    def bracket_basis(self, idx) -> dict:
        canon, sign = wedge_expand(idx)
        if sign == 0:
            return {}
        target = self.f.get(canon)
        if not target:
            return {}
        return dict(target) if sign == 1 else {b: -c for b, c in target.items()}

    def coefficient(self, k: int) -> dict:
        """Structure constants at order ``t^k``."""
        out = {}
        for S, target in self.f.items():
            t = {b: c.c[k] for b, c in target.items() if c.c[k]}
            if t:
                out[S] = t
        return out


def _check_adjoint_one(A, c, what="cochain"):
    if c.action != "adjoint" or c.p != 1 or c.algebra is not A:
        raise ExtensionError(f"expected an adjoint 1-{what} on the base algebra")


def deform(A: NLieAlgebra, c: Cochain, order: int = 1, alpha2: Cochain | None = None) -> Deformation:
    """``[.]_t = [.] + t c(.) (+ t^2 alpha2(.))`` truncated at ``t^(order+1)``."""
    _check_adjoint_one(A, c)
    if order not in (1, 2):
        raise ExtensionError("deformation order must be 1 or 2")
    if alpha2 is not None:
        _check_adjoint_one(A, alpha2)
        if order < 2:
            raise ExtensionError("a second-order term needs order 2")
    layout = c.layout
    f: dict = {}

    def put(S, b, k, v):
        if not v:
            return
        slot = f.setdefault(S, {})
        poly = slot.get(b, TruncPoly.const(0, order))
        coeffs = list(poly.c)
        coeffs[k] += v
        slot[b] = TruncPoly(coeffs)

    for S, target in A.f.items():
        for b, v in target.items():
            put(S, b, 0, v)
    for k, coch in ((1, c), (2, alpha2)):
        if coch is None:
            continue
        for si, S in enumerate(layout.N):
            for b in range(A.d):
                put(S, b, k, coch.values[si, b])
    f = {S: {b: p for b, p in t.items() if p} for S, t in f.items()}
    f = {S: t for S, t in f.items() if t}
    return Deformation(A, order, f, c, alpha2)


@dataclass
class OrderReport:
    order: int
    passed: bool
    violations: int
    witness: dict | None

    def to_json(self):
        return {"order": self.order, "passed": self.passed, "violations": self.violations,
                "witness": self.witness}


def _residuals(D: Deformation):
    A = D.base
    for x in itertools.combinations(range(A.d), A.n - 1):
        for y in itertools.combinations(range(A.d), A.n):
            yield x, y, derivation_residual(D.bracket_basis, A.d, x, y)


def fi_residual_orders(D: Deformation) -> list[OrderReport]:
    """FI residual of the deformed bracket split by powers of t."""
    m = D.order
    counts = [0] * (m + 1)
    witness: list = [None] * (m + 1)
    for x, y, res in _residuals(D):
        for k in range(m + 1):
            vec = {b: p.c[k] for b, p in res.items() if p.c[k]}
            if vec:
                counts[k] += 1
                if witness[k] is None:
                    witness[k] = {"x": [i + 1 for i in x], "y": [i + 1 for i in y],
                                  "residual": {str(b + 1): str(v) for b, v in sorted(vec.items())}}
    return [OrderReport(k, counts[k] == 0, counts[k], witness[k]) for k in range(m + 1)]


def first_order_residual(A: NLieAlgebra, c: Cochain) -> list[Fraction]:
    """The order-t FI residual of ``[.] + t c`` as a flat vector over (x, y, output)."""
    D = deform(A, c, 1)
    out = []
    for _, _, res in _residuals(D):
        out.extend(res[b].c[1] if b in res else Fraction(0) for b in range(A.d))
    return out


def trivialize_deformation(D: Deformation, beta: Cochain) -> TrivializationReport:
    """Pass to ``X' = X - t beta(X)`` and compare with the base constants modulo t^2.

    In the primed basis the order-t constants become ``c - delta beta``,
    so success holds exactly when ``c = delta beta``.
    """
    A = D.base
    if beta.action != "adjoint" or beta.p != 0 or beta.algebra is not A:
        raise ExtensionError("expected an adjoint 0-cochain on the base algebra")
    d, m = A.d, 1
    B = [[beta.values[k, j] for k in range(d)] for j in range(d)]  # beta(e_k) = sum_j B[j][k] e_j

    def poly(a0=0, a1=0):
        return TruncPoly([a0, a1], m)

    # primed generators in old coordinates: e'_k = e_k - t beta(e_k)
    gens = [{j: poly(int(j == k), -B[j][k]) for j in range(d) if j == k or B[j][k]} for k in range(d)]

    def bracket_vec(vectors):
        out: dict = {}
        for combo in itertools.product(*(v.items() for v in vectors)):
            idx = tuple(i for i, _ in combo)
            coeff = poly(1)
            for _, c in combo:
                coeff = coeff * c
            for b, v in D.bracket_basis(idx).items():
                nv = out.get(b, poly()) + coeff * TruncPoly(v.c[: m + 1])
                if nv:
                    out[b] = nv
                else:
                    out.pop(b, None)
        return out

    residual = {}
    f = {}
    for S in itertools.combinations(range(d), A.n):
        old = bracket_vec([gens[i] for i in S])
        # old coordinates -> primed coordinates: e_j = e'_j + t beta(e'_j) mod t^2
        new: dict = {}
        for j, v in old.items():
            nv = new.get(j, poly()) + v
            new[j] = nv
            for i in range(d):
                if B[i][j]:
                    new[i] = new.get(i, poly()) + poly(0, B[i][j]) * v
        new = {b: v for b, v in new.items() if v}
        if new:
            f[S] = {b: v.c[0] for b, v in new.items() if v.c[0]}
        base = A.bracket_basis(S)
        for b in set(new) | set(base):
            got = new.get(b, poly())
            if got.c[0] != base.get(b, 0) or got.c[1]:
                residual[f"{','.join(str(i + 1) for i in S)}->{b + 1}"] = got.c[1] if got.c[0] == base.get(b, 0) else got
    primed = NLieAlgebra(A.n, d, {S: t for S, t in f.items() if t}, names=A.names)
    return TrivializationReport(not residual, residual, primed)


# ---------------------------------------------------------------------------
# second order
# ---------------------------------------------------------------------------

@dataclass
class ObstructionReport:
    gamma: Cochain
    closed: bool
    class_ok: bool
    in_image: bool | None

    def to_json(self):
        return {"closed": self.closed, "class_ok": self.class_ok, "in_image": self.in_image,
                "gamma_nonzero": not self.gamma.is_zero()}


def cochain_bracket(c: Cochain):
    """Basis-level bracket ``idx -> c(e_idx)`` of an adjoint 1-cochain (antisymmetric in idx)."""
    layout = c.layout
    table = {}
    for si, S in enumerate(layout.N):
        t = {b: v for b, v in enumerate(c.values[si]) if v}
        if t:
            table[S] = t

    def bracket_basis(idx):
        canon, sign = wedge_expand(idx)
        if sign == 0 or canon not in table:
            return {}
        t = table[canon]
        return dict(t) if sign == 1 else {b: -v for b, v in t.items()}

    return bracket_basis


def obstruction_cocycle(A: NLieAlgebra, c: Cochain, decide_class: bool = False) -> ObstructionReport:
    """The order-t^2 FI defect of ``[.] + t c`` as an adjoint 2-cochain ``gamma``.

    With no second-order term the t^2 part of the residual only involves
    ``c`` nested in ``c``.  It is read at x (an (n-1)-subset) and y (an
    n-subset), which is exactly the reduced storage of a 2-cochain.  The
    report records ``delta gamma == 0`` on every argument tuple, whether
    the residual was antisymmetric as assumed (``class_ok``) and, if
    requested, whether ``gamma`` is a coboundary (extension to order 2
    exists).
    """
    _check_adjoint_one(A, c, "cocycle")
    cb = cochain_bracket(c)
    fb = A.bracket_basis
    layout = CochainLayout.of(A)
    d = A.d
    vals = [Fraction(0)] * layout.dim("adjoint", 2)
    for x in itertools.combinations(range(d), A.n - 1):
        wi = layout.W.index_of(x)
        for y in itertools.combinations(range(d), A.n):
            r1 = derivation_residual(fb, d, x, y, inner=cb)
            _axpy(r1, 1, derivation_residual(cb, d, x, y, inner=fb))
            if r1:
                raise ExtensionError("input is not a 1-cocycle (order-t residual is nonzero)")
            si = layout.N.index_of(y)
            for b, v in derivation_residual(cb, d, x, y).items():
                vals[(wi * len(layout.N) + si) * d + b] = v
    gamma = Cochain(A, "adjoint", 2, vals)
    class_ok = _residual_class_ok(A, cb, gamma)
    closed = is_cocycle(gamma)
    in_image = is_coboundary(gamma) if decide_class else None
    return ObstructionReport(gamma, closed, class_ok, in_image)


def _residual_class_ok(A: NLieAlgebra, cb, gamma: Cochain) -> bool:
    """Compare gamma's antisymmetric extension with the raw defect on every ordering of y."""
    full = gamma.full()
    layout = gamma.layout
    d = A.d
    for x in itertools.combinations(range(d), A.n - 1):
        wi = layout.W.index_of(x)
        for y in itertools.permutations(range(d), A.n):
            k, s = layout.W.canonical(y[:-1])
            res = derivation_residual(cb, d, x, y)
            want = full[wi, k, y[-1]]
            if any(res.get(b, 0) != s * want[b] for b in range(d)):
                return False
    return True
