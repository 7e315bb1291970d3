"""End-to-end verification battery: semisimple Filippov algebras have no
nontrivial central extensions or infinitesimal deformations, checked exactly
at small dimensions, together with the supporting structural identities.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the
battery is shared by the ``whitehead-suite`` command and the test suite.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import NLieAlgebra, abelian_algebra, check_fi, direct_sum, simple_algebra
from .cohomology import (
    Cochain,
    CochainLayout,
    check_nilpotency,
    coboundary,
    cocycle_basis,
    cohomology_dims,
    from_dual_coordinates,
    is_cocycle,
    is_cocycle_symmetric_test,
    random_cocycle,
    trivialize_adjoint_simple,
    trivialize_semisimple,
    trivialize_trivial_simple,
)
from .extdef import (
    central_extend,
    deform,
    fi_residual_orders,
    obstruction_cocycle,
    trivialize_deformation,
    trivialize_extension,
)
from .fundamental import (
    FundamentalVector,
    associated_leibniz_algebra,
    associated_lie_algebra,
    check_fundamental_identities,
    check_leibniz_identity,
    compose,
    fundamental_basis,
)
from .killing import kasymov_nondegenerate, wedge_gram_matrix
from .linalg import QMatrix, rank_of_vectors

EUCLID4 = (1, 1, 1, 1)
LORENTZ4 = (1, 1, 1, -1)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.seconds:.2f}s)"

    def to_json(self):
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


class Algebras:
    """Shared instances so that cached tables are built once per run."""

    def __init__(self):
        self._store = {}

    def get(self, key):
        if key not in self._store:
            kind = key[0]
            if kind == "simple":
                self._store[key] = simple_algebra(key[1], key[2])
            elif kind == "sum":
                self._store[key] = direct_sum([self.get(("simple", 3, EUCLID4))] * key[1])
            elif kind == "abelian":
                self._store[key] = abelian_algebra(key[1], key[2])
        return self._store[key]

    def simple(self, n, sig=None):
        return self.get(("simple", n, tuple(sig) if sig else (1,) * (n + 1)))

    def a4(self, sig=EUCLID4):
        return self.simple(3, sig)

    def a4a4(self):
        return self.get(("sum", 2))


def _timed(number, title, fn, *args):
    t0 = time.perf_counter()
    passed, detail = fn(*args)
    return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0)


def _signatures(n):
    return list(itertools.product((1, -1), repeat=n + 1))


# -- 1 ----------------------------------------------------------------------

def _c1(alg: Algebras, seed, max_n):
    t0 = time.perf_counter()
    results = {}
    for sig in _signatures(3):
        results["n=3 " + "".join("+" if s > 0 else "-" for s in sig)] = check_fi(alg.a4(sig)).passed
    for n in range(4, max_n + 1):
        results[f"n={n} euclidean"] = check_fi(alg.simple(n)).passed
    elapsed = time.perf_counter() - t0
    return all(results.values()) and elapsed < 5.0, {"checks": len(results), "all_pass": all(results.values()),
                                                    "seconds": round(elapsed, 3)}


# -- 2 ----------------------------------------------------------------------

def _c2(alg, seed, max_n):
    ex = check_fundamental_identities(alg.a4())
    rnd = check_fundamental_identities(alg.a4a4(), samples=200, seed=seed)
    return ex.passed and rnd.passed, {"A4_exhaustive": ex.to_json(), "A4+A4_random": rnd.to_json()}


# -- 3 ----------------------------------------------------------------------

def _c3(alg, seed, max_n):
    detail = {}
    ok = True
    for name, A in (("A4", alg.a4()), ("A4+A4", alg.a4a4())):
        for action in ("trivial", "adjoint"):
            for p in (0, 1):
                rep = check_nilpotency(A, action, p, trials=100, seed=seed + p)
                detail[f"{name} {action} p={p}"] = rep.failures
                ok = ok and rep.passed
    return ok, {"failures": detail}


# -- 4 ----------------------------------------------------------------------

def _c4(alg, seed, max_n):
    dims = {}
    ok = True
    for n in range(3, max_n + 1):
        got = cohomology_dims(alg.simple(n), "trivial", 1).as_tuple()
        dims[f"A{n + 1}"] = list(got)
        ok = ok and got == (n + 1, n + 1, 0)
    got = cohomology_dims(alg.a4a4(), "trivial", 1)
    dims["A4+A4"] = list(got.as_tuple())
    ok = ok and got.dimH == 0
    return ok, {"dims": dims}


# -- 5 ----------------------------------------------------------------------

def _symmetric_dual_count(A, n):
    """Independent count: rank of cochains with symmetric dual coordinates, all verified cocycles."""
    d = A.d
    vecs = []
    all_cocycles = True
    for i in range(d):
        for j in range(i, d):
            M = [[0] * d for _ in range(d)]
            M[i][j] = M[j][i] = 1
            c = from_dual_coordinates(A, M)
            all_cocycles = all_cocycles and is_cocycle(c)
            vecs.append(c.flat())
    return rank_of_vectors(vecs), all_cocycles


def _c5(alg, seed, max_n):
    dims = {}
    ok = True
    for n in (3, 4):
        A = alg.simple(n)
        got = cohomology_dims(A, "adjoint", 1)
        expect = (n + 1) * (n + 2) // 2
        count, all_cocycles = _symmetric_dual_count(A, n)
        dims[f"A{n + 1}"] = {"dims": list(got.as_tuple()), "symmetric_dual_count": count}
        ok = ok and got.as_tuple() == (expect, expect, 0) and count == expect and all_cocycles
    got = cohomology_dims(alg.a4a4(), "adjoint", 1)
    dims["A4+A4"] = {"dims": list(got.as_tuple())}
    ok = ok and got.dimH == 0
    return ok, dims


# -- 6 ----------------------------------------------------------------------

def _c6(alg, seed, max_n):
    detail = {}
    disagreements = 0
    for name, sig in (("euclidean", EUCLID4), ("lorentz", LORENTZ4)):
        A = alg.a4(sig)
        cocycles = 0
        for k in range(CochainLayout.of(A).dim("adjoint", 1)):
            cyc, sym = is_cocycle_symmetric_test(A, Cochain.basis(A, "adjoint", 1, k))
            disagreements += cyc != sym
            cocycles += cyc
        detail[name] = {"basis_cocycles": cocycles}
    detail["disagreements"] = disagreements
    return disagreements == 0, detail


# -- 7 ----------------------------------------------------------------------

def _cross_ideal_indices(A):
    W = fundamental_basis(A, "wedge")
    blocks = A.ideals
    def block(i):
        return next(k for k, (lo, hi) in enumerate(blocks) if lo <= i < hi)
    return {k for k, w in enumerate(W) if len({block(i) for i in w}) > 1}


def _c7(alg, seed, max_n):
    g4 = wedge_gram_matrix(alg.a4())
    target = QMatrix([[Fraction(-2 if i == j else 0) for j in range(6)] for i in range(6)])
    AA = alg.a4a4()
    gs = wedge_gram_matrix(AA)
    cross = _cross_ideal_indices(AA)
    supports = [frozenset(i for i, x in enumerate(v.coords) if x) for v in gs.null_basis]
    null_cross = all(s <= cross for s in supports) and rank_of_vectors(v.coords for v in gs.null_basis) == len(cross)
    nondeg, witness = kasymov_nondegenerate(AA)
    ok = g4.matrix == target and gs.rank == 12 and gs.nullity == 16 and len(cross) == 16 and null_cross and nondeg
    return ok, {"A4_gram_is_minus_2I": g4.matrix == target, "A4+A4_rank": gs.rank,
                "A4+A4_nullity": gs.nullity, "null_vectors_cross_ideal": null_cross,
                "kasymov_nondegenerate": nondeg}


# -- 8 ----------------------------------------------------------------------

def _negative_definite(K: QMatrix) -> bool:
    r = K.rows
    for k in range(1, r + 1):
        minor = QMatrix([row[:k] for row in K.data[:k]], k).det()
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


def _c8(alg, seed, max_n):
    detail = {}
    ok = True
    for name, sig in (("euclidean", EUCLID4), ("lorentz", LORENTZ4)):
        L = associated_lie_algebra(alg.a4(sig))
        detail[name] = {"dim": L.dim, "antisymmetric": L.antisymmetric, "jacobi": L.jacobi}
        ok = ok and L.dim == 6 and L.antisymmetric and L.jacobi
        if name == "euclidean":
            neg = _negative_definite(L.killing_matrix())
            detail[name]["killing_negative_definite"] = neg
            ok = ok and neg
    return ok, detail


# -- 9 ----------------------------------------------------------------------

def _random_symmetric(rng, d, span=3):
    M = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            M[i][j] = M[j][i] = Fraction(rng.randint(-span, span), rng.randint(1, span))
    return M


def _c9(alg, seed, max_n):
    rng = random.Random(seed)
    counts = {}
    ok = True
    for n in (3, 4):
        A = alg.simple(n)
        good = 0
        for _ in range(100):
            c = random_cocycle(A, "trivial", 1, rng)
            good += coboundary(trivialize_trivial_simple(A, c)) == c
        counts[f"A{n + 1} trivial"] = good
        ok = ok and good == 100
    A = alg.a4()
    good = 0
    for _ in range(100):
        c = from_dual_coordinates(A, _random_symmetric(rng, A.d))
        good += coboundary(trivialize_adjoint_simple(A, c)) == c
    counts["A4 adjoint"] = good
    ok = ok and good == 100
    AA = alg.a4a4()
    for action in ("trivial", "adjoint"):
        good = 0
        for _ in range(50):
            c = random_cocycle(AA, action, 1, rng)
            good += coboundary(trivialize_semisimple(AA, c)) == c
        counts[f"A4+A4 {action}"] = good
        ok = ok and good == 50
    return ok, {"verified": counts}


# -- 10 ---------------------------------------------------------------------

def nilpotent_example():
    """Two-step nilpotent algebra ``[e1,e2,e3] = e4`` in dimension 5 and a trivial 1-cochain that is not a cocycle."""
    N = NLieAlgebra(3, 5, {(0, 1, 2): {3: 1}})
    layout = CochainLayout.of(N)
    vals = [0] * layout.dim("trivial", 1)
    vals[layout.N.index_of((0, 3, 4))] = 1
    return N, Cochain(N, "trivial", 1, vals)


def _c10(alg, seed, max_n):
    A = alg.a4()
    fi_ok = triv_ok = 0
    size = CochainLayout.of(A).dim("trivial", 1)
    for k in range(size):
        c = Cochain.basis(A, "trivial", 1, k)
        ext = central_extend(A, c)
        fi_ok += ext.fi.passed
        triv_ok += trivialize_extension(ext, trivialize_trivial_simple(A, c)).success
    N, bad = nilpotent_example()
    ext = central_extend(N, bad)
    nil_fail = check_fi(N).passed and not ext.fi.passed and ext.fi.worst_case is not None
    return fi_ok == size and triv_ok == size and nil_fail, {
        "basis_size": size, "extensions_pass_fi": fi_ok, "trivialized": triv_ok,
        "nilpotent_noncocycle_witness": ext.fi.worst_case}


# -- 11 ---------------------------------------------------------------------

def _c11(alg, seed, max_n):
    A = alg.a4()
    basis = cocycle_basis(A, "adjoint", 1)
    order1 = sum(fi_residual_orders(deform(A, z, 1))[1].passed for z in basis)
    recovered = sum(trivialize_deformation(deform(A, z, 1), trivialize_adjoint_simple(A, z)).success for z in basis)
    D = [[0] * A.d for _ in range(A.d)]
    D[0][1], D[1][0] = 1, -1
    non = fi_residual_orders(deform(A, from_dual_coordinates(A, D), 1))[1]
    rng = random.Random(seed)
    closed = 0
    for _ in range(100):
        rep = obstruction_cocycle(A, random_cocycle(A, "adjoint", 1, rng))
        closed += rep.closed and rep.class_ok
    ok = order1 == len(basis) and recovered == len(basis) and not non.passed and closed == 100
    return ok, {"Z1_basis": len(basis), "order1_vanishes": order1, "recovered_mod_t2": recovered,
                "noncocycle_witness": non.witness, "gamma_closed": closed}


# -- 12 ---------------------------------------------------------------------

def a4_constants_on_abelian(ab: NLieAlgebra, A: NLieAlgebra) -> Cochain:
    layout = CochainLayout.of(ab)
    return Cochain(ab, "adjoint", 1, [A.f.get(S, {}).get(j, 0) for S in layout.N for j in range(ab.d)])


def _c12(alg, seed, max_n):
    ab = alg.get(("abelian", 3, 4))
    dims = cohomology_dims(ab, "adjoint", 1)
    c = a4_constants_on_abelian(ab, alg.a4())
    orders = [r.passed for r in fi_residual_orders(deform(ab, c, 2))]
    rng = random.Random(seed)
    betas = [Cochain.zero(ab, "adjoint", 0), Cochain.random(ab, "adjoint", 0, rng)]
    failures = sum(not trivialize_deformation(deform(ab, c, 1), b).success for b in betas)
    ok = dims.dimH == 16 and all(orders) and failures == len(betas)
    return ok, {"dims": list(dims.as_tuple()), "fi_orders_pass": orders, "trivialization_failures": failures}


# -- 13 ---------------------------------------------------------------------

def _c13(alg, seed, max_n):
    AA = alg.a4a4()
    L = associated_leibniz_algebra(AA)
    rep = check_leibniz_identity(L)
    e = lambda i: [Fraction(int(j == i)) for j in range(AA.d)]  # noqa: E731
    X = FundamentalVector.decomposable(AA, e(0), e(4))
    Y = FundamentalVector.decomposable(AA, e(1), e(2))
    xy = compose(AA, X, Y)
    yx = compose(AA, Y, X)
    expect = -FundamentalVector.decomposable(AA, e(3), e(4))
    ok = L.d == 28 and rep.passed and xy.is_zero() and yx == expect and not yx.is_zero()
    return ok, {"dim": L.d, "leibniz_identity": rep.passed, "XY_zero": xy.is_zero(),
                "YX_equals_minus_e4_f1": yx == expect}


CRITERIA = [
    (1, "Filippov identity on the simple family", _c1),
    (2, "composition identities of fundamental objects", _c2),
    (3, "coboundary squares to zero", _c3),
    (4, "trivial-action first cohomology vanishes", _c4),
    (5, "adjoint first cohomology vanishes", _c5),
    (6, "cocycles are the symmetric dual matrices", _c6),
    (7, "trace form: Gram degeneracy versus Kasymov nondegeneracy", _c7),
    (8, "associated Lie algebra", _c8),
    (9, "constructive trivializers", _c9),
    (10, "central extensions end to end", _c10),
    (11, "deformations end to end", _c11),
    (12, "abelian algebra is not rigid", _c12),
    (13, "associated Leibniz algebra", _c13),
]


def run_criterion(number: int, seed: int = 0, max_n: int = 5, algebras: Algebras | None = None) -> CriterionResult:
    alg = algebras or Algebras()
    for num, title, fn in CRITERIA:
        if num == number:
            return _timed(num, title, fn, alg, seed, max_n)
    raise KeyError(number)


def run_suite(seed: int = 0, max_n: int = 5, only=None) -> list[CriterionResult]:
    alg = Algebras()
    return [_timed(num, title, fn, alg, seed, max_n) for num, title, fn in CRITERIA
            if only is None or num in only]


# -- JSON round trip ----------------------------------------------------------

def roundtrip_check(seed: int = 0) -> dict:
    """Emit, re-parse and re-emit a representative set of artifacts; all must be byte-identical."""
    from . import serialize as ser
    from .cli import run

    rng = random.Random(seed)
    alg = Algebras()
    A = alg.a4()
    docs = {}
    docs["algebra A4"] = (ser.algebra_to_json(A), lambda d: ser.algebra_to_json(ser.algebra_from_json(d)))
    for key, B in (("algebra A4 lorentz", alg.a4(LORENTZ4)), ("algebra A4+A4", alg.a4a4()),
                   ("algebra A5", alg.simple(4)), ("leibniz A4+A4", associated_leibniz_algebra(alg.a4a4()))):
        docs[key] = (ser.algebra_to_json(B), lambda d: ser.algebra_to_json(ser.algebra_from_json(d)))
    for action in ("trivial", "adjoint"):
        for p in (0, 1, 2):
            c = Cochain.random(A, action, p, rng, density=0.5)
            docs[f"cochain {action} p={p}"] = (
                ser.cochain_to_json(c), lambda d: ser.cochain_to_json(ser.cochain_from_json(d, A)))
    docs["gram A4+A4"] = (ser.gram_to_json(wedge_gram_matrix(alg.a4a4())), None)
    docs["deformation A4"] = (ser.deformation_to_json(deform(A, random_cocycle(A, "adjoint", 1, rng), 2)), None)
    cli_runs = [["algebra", "simple", "--n", "3", "--signature", "++++"],
                ["algebra", "simple", "--n", "4", "--signature", "++-++"]]
    for argv in cli_runs:
        code, doc = run(argv)
        docs["cli " + " ".join(argv)] = (doc, lambda d: ser.algebra_to_json(ser.algebra_from_json(d)))
    failures = []
    for name, (doc, reparse) in docs.items():
        text = ser.dumps(doc)
        again = ser.dumps(json.loads(text))
        if again != text:
            failures.append(name)
            continue
        if reparse is not None and ser.dumps(reparse(json.loads(text))) != text:
            failures.append(name)
    return {"passed": not failures, "artifacts": len(docs), "failures": failures}
