"""Canonical JSON for algebras, cochains, deformations and Gram reports.

External indices are 1-based.  Rationals are written as ``num``/``den``
pairs in lowest terms, entries are sorted, and documents are dumped with
sorted keys so that a parse/emit round trip is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import AlgebraError, NLieAlgebra
from .cohomology import ACTIONS, Cochain, CochainLayout
from .fundamental import NLeibnizAlgebra


class FormatError(ValueError):
    pass


def dumps(doc, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _rat(v) -> dict:
    v = Fraction(v)
    return {"num": v.numerator, "den": v.denominator}


def _read_rat(entry) -> Fraction:
    try:
        num, den = entry["num"], entry.get("den", 1)
    except (TypeError, KeyError) as exc:
        raise FormatError(f"rational needs num/den: {entry!r}") from exc
    if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool) or isinstance(den, bool):
        raise FormatError("num and den must be integers")
    if den == 0:
        raise FormatError("zero denominator")
    return Fraction(num, den)


def _require(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"missing field {key!r}")
    val = doc[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise FormatError(f"field {key!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise FormatError(f"field {key!r} must be a list")
    return val


# -- algebras ---------------------------------------------------------------

def algebra_to_json(A) -> dict:
    leibniz = isinstance(A, NLeibnizAlgebra)
    consts = A.g if leibniz else A.f
    entries = []
    for idx in sorted(consts):
        for b in sorted(consts[idx]):
            c = consts[idx][b]
            if c:
                entries.append({"idx": [i + 1 for i in idx], "target": b + 1, **_rat(c)})
    doc = {"n": A.n, "dim": A.d, "basis": list(A.names), "f": entries}
    if leibniz:
        doc["antisymmetric"] = False
    else:
        if A.signature is not None:
            doc["signature"] = list(A.signature)
        if A.ideals is not None:
            doc["ideals"] = [[lo + 1, hi] for lo, hi in A.ideals]
    return doc


def algebra_from_json(doc):
    n = _require(doc, "n", int)
    d = _require(doc, "dim", int)
    entries = _require(doc, "f", list)
    names = doc.get("basis")
    if names is not None and (not isinstance(names, list) or len(names) != d):
        raise FormatError("basis must list one name per dimension")
    consts: dict = {}
    for e in entries:
        idx = _require(e, "idx", list)
        target = _require(e, "target", int)
        if not all(isinstance(i, int) and 1 <= i <= d for i in idx) or not 1 <= target <= d:
            raise FormatError(f"index out of range in {e!r}")
        key = tuple(i - 1 for i in idx)
        slot = consts.setdefault(key, {})
        if target - 1 in slot:
            raise FormatError(f"duplicate entry {e!r}")
        slot[target - 1] = _read_rat(e)
    if doc.get("antisymmetric", True) is False:
        try:
            return NLeibnizAlgebra(n, d, consts, names=names)
        except AlgebraError as exc:
            raise FormatError(str(exc)) from exc
    for key in consts:
        if list(key) != sorted(set(key)):
            raise FormatError(f"idx must be strictly increasing: {[i + 1 for i in key]}")
    ideals = doc.get("ideals")
    if ideals is not None:
        try:
            ideals = [(int(lo) - 1, int(hi)) for lo, hi in ideals]
        except (TypeError, ValueError) as exc:
            raise FormatError("ideals must be [lo, hi] pairs") from exc
    try:
        return NLieAlgebra(n, d, consts, ideals=ideals, signature=doc.get("signature"), names=names)
    except AlgebraError as exc:
        raise FormatError(str(exc)) from exc


# -- cochains ---------------------------------------------------------------

def cochain_to_json(c: Cochain) -> dict:
    entries = []
    for blocks, z, j, v in c.entries():
        e = {"blocks": [[i + 1 for i in b] for b in blocks], "z": z + 1, **_rat(v)}
        if j is not None:
            e["value_index"] = j + 1
        entries.append(e)
    return {"action": c.action, "p": c.p, "entries": entries}


def cochain_from_json(doc, A: NLieAlgebra) -> Cochain:
    """Parse a cochain; entries may use any argument order and are antisymmetrized on read.

    Entries that name the same coordinate must agree after sign
    correction; entries on degenerate arguments must be zero.
    """
    action = _require(doc, "action", str)
    if action not in ACTIONS:
        raise FormatError(f"unknown action {action!r}")
    p = _require(doc, "p", int)
    if p < 0:
        raise FormatError("negative degree")
    layout = CochainLayout.of(A)
    d, n = A.d, A.n
    dim = layout.dim(action, p)
    shape = layout.reduced_shape(action, p)
    vals: dict[int, Fraction] = {}
    for e in _require(doc, "entries", list):
        blocks = _require(e, "blocks", list)
        z = _require(e, "z", int) - 1
        if len(blocks) != p or not 0 <= z < d:
            raise FormatError(f"entry does not fit a degree-{p} cochain: {e!r}")
        v = _read_rat(e)
        key = []
        sign = 1
        for bi, b in enumerate(blocks):
            if not isinstance(b, list) or len(b) != n - 1 or not all(isinstance(i, int) and 1 <= i <= d for i in b):
                raise FormatError(f"bad block {b!r}")
            b = tuple(i - 1 for i in b)
            if bi == p - 1:
                k, s = layout.N.canonical(b + (z,))
            else:
                k, s = layout.W.canonical(b)
            if s == 0:
                if v:
                    raise FormatError(f"nonzero value on degenerate arguments: {e!r}")
                break
            key.append(k)
            sign *= s
        else:
            if p == 0:
                key = [z]
            if action == "adjoint":
                j = e.get("value_index")
                if not isinstance(j, int) or not 1 <= j <= d:
                    raise FormatError("adjoint entries need value_index in 1..dim")
                key.append(j - 1)
            elif "value_index" in e:
                raise FormatError("trivial-action entries take no value_index")
            flat = 0
            for k, size in zip(key, shape):
                flat = flat * size + k
            val = sign * v
            if flat in vals and vals[flat] != val:
                raise FormatError(f"inconsistent entries for one coordinate: {e!r}")
            vals[flat] = val
    return Cochain(A, action, p, [vals.get(i, Fraction(0)) for i in range(dim)])


# -- deformations -----------------------------------------------------------

def deformation_to_json(D) -> dict:
    doc = algebra_to_json(D.base)
    entries = []
    for idx in sorted(D.f):
        for b in sorted(D.f[idx]):
            poly = D.f[idx][b]
            entries.append({"idx": [i + 1 for i in idx], "target": b + 1,
                            "coeffs": [_rat(c) for c in poly.c]})
    doc["f"] = entries
    doc["order"] = D.order
    return doc


# -- reports ----------------------------------------------------------------

def gram_to_json(report) -> dict:
    return {
        "matrix": [[_rat(v) for v in row] for row in report.matrix.data],
        "rank": report.rank,
        "nullity": report.nullity,
        "null_basis": [[_rat(v) for v in vec.coords] for vec in report.null_basis],
        "is_diagonal": report.is_diagonal,
    }


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc.msg})") from exc
