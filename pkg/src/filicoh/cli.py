"""Command-line interface: ``filicoh <command> ...``; one JSON document per run.

Exit codes: 0 success, 1 a mathematical property failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import serialize as ser
from .algebra import AlgebraError, NLieAlgebra, check_fi, direct_sum, parse_signature, read_signature, simple_algebra
from .cohomology import ACTIONS, MAX_DEGREE, CohomologyError, cohomology_dims, trivialize
from .extdef import (
    ExtensionError,
    central_extend,
    deform,
    fi_residual_orders,
    obstruction_cocycle,
    trivialize_deformation,
    trivialize_extension,
)
from .killing import kasymov_nondegenerate, wedge_gram_matrix

log = logging.getLogger("filicoh")

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("FILICOH_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise InputError(f"FILICOH_SEED must be an integer, got {env!r}") from exc


def _load_algebra(path) -> NLieAlgebra:
    A = ser.algebra_from_json(ser.load(path))
    if not isinstance(A, NLieAlgebra):
        raise InputError("this command needs an n-Lie algebra (antisymmetric constants)")
    return A


def _load_fi_algebra(path):
    """Load an algebra and check FI; returns (algebra, failure payload or None)."""
    A = _load_algebra(path)
    rep = check_fi(A)
    if not rep.passed:
        return A, {"error": "algebra violates the Filippov identity", "fi": rep.to_json()}
    return A, None


def _semisimple_declared(A: NLieAlgebra) -> bool:
    if read_signature(A) is not None:
        return True
    if not A.ideals:
        return False
    return all(read_signature(A.restrict(lo, hi)) is not None for lo, hi in A.ideals)


def _require_semisimple(A):
    if not _semisimple_declared(A):
        raise InputError("--trivialize needs a simple algebra or a declared sum of simple ideals")


# -- commands ---------------------------------------------------------------

def cmd_algebra(args):
    if args.kind == "simple":
        if args.n is None or args.signature is None:
            raise InputError("algebra simple needs --n and --signature")
        sig = parse_signature(args.signature)
        return OK, ser.algebra_to_json(simple_algebra(args.n, sig))
    if not args.files:
        raise InputError("algebra sum needs at least one algebra file")
    parts = [_load_algebra(p) for p in args.files]
    if len({A.n for A in parts}) != 1:
        raise InputError("summands must share the same arity")
    return OK, ser.algebra_to_json(direct_sum(parts))


def cmd_check(args):
    A = ser.algebra_from_json(ser.load(args.file))
    rep = check_fi(A)
    return (OK if rep.passed else VIOLATION), rep.to_json()


def cmd_killing(args):
    A, bad = _load_fi_algebra(args.file)
    if bad:
        return VIOLATION, bad
    if args.mode == "gram":
        return OK, ser.gram_to_json(wedge_gram_matrix(A))
    nondeg, witness = kasymov_nondegenerate(A)
    doc = {"nondegenerate": nondeg, "witness": None}
    if witness is not None:
        doc["witness"] = [ser._rat(v) for v in witness]
    return OK, doc


def cmd_cohomology(args):
    A, bad = _load_fi_algebra(args.file)
    if bad:
        return VIOLATION, bad
    if not 0 <= args.degree <= MAX_DEGREE:
        raise InputError(f"degree must be in 0..{MAX_DEGREE}")
    dims = cohomology_dims(A, args.action, args.degree)
    doc = {"action": args.action, "degree": args.degree, **dims.to_json()}
    # semisimple algebras must have vanishing first cohomology for both actions
    code = OK
    if args.degree == 1 and _semisimple_declared(A) and dims.dimH != 0:
        code = VIOLATION
    return code, doc


def cmd_extend(args):
    A, bad = _load_fi_algebra(args.file)
    if bad:
        return VIOLATION, bad
    c = ser.cochain_from_json(ser.load(args.cocycle), A)
    if c.action != "trivial" or c.p != 1:
        raise InputError("extend needs a trivial-action 1-cochain")
    ext = central_extend(A, c)
    doc = {"extended": ser.algebra_to_json(ext.extended), "fi": ext.fi.to_json()}
    code = OK if ext.fi.passed else VIOLATION
    if args.trivialize and ext.fi.passed:
        _require_semisimple(A)
        try:
            beta = trivialize(A, c)
        except (CohomologyError, AlgebraError) as exc:
            doc["trivialization"] = {"success": False, "error": str(exc)}
            return VIOLATION, doc
        rep = trivialize_extension(ext, beta)
        doc["trivialization"] = {**rep.to_json(), "beta": ser.cochain_to_json(beta),
                                 "algebra": ser.algebra_to_json(rep.algebra)}
        code = OK if rep.success else VIOLATION
    return code, doc


def cmd_deform(args):
    A, bad = _load_fi_algebra(args.file)
    if bad:
        return VIOLATION, bad
    c = ser.cochain_from_json(ser.load(args.cocycle), A)
    if c.action != "adjoint" or c.p != 1:
        raise InputError("deform needs an adjoint 1-cochain")
    D = deform(A, c, args.order)
    orders = fi_residual_orders(D)
    doc = {"deformation": ser.deformation_to_json(D), "residuals": [r.to_json() for r in orders]}
    cocycle = orders[1].passed
    code = OK if cocycle else VIOLATION
    if args.order == 2 and cocycle:
        obs = obstruction_cocycle(A, c, decide_class=True)
        doc["obstruction"] = {**obs.to_json(), "gamma": ser.cochain_to_json(obs.gamma)}
        if not (obs.closed and obs.class_ok):
            code = VIOLATION
    if args.trivialize and cocycle:
        _require_semisimple(A)
        try:
            beta = trivialize(A, c)
        except (CohomologyError, AlgebraError) as exc:
            doc["trivialization"] = {"success": False, "error": str(exc)}
            return VIOLATION, doc
        rep = trivialize_deformation(deform(A, c, 1), beta)
        doc["trivialization"] = {**rep.to_json(), "beta": ser.cochain_to_json(beta)}
        if not rep.success:
            code = VIOLATION
    return code, doc


def cmd_suite(args):
    from .suite import roundtrip_check, run_suite

    seed = _seed(args)
    if args.max_n < 3:
        raise InputError("--max-n must be at least 3")
    results = run_suite(seed=seed, max_n=args.max_n)
    rt = roundtrip_check(seed=seed)
    passed = all(r.passed for r in results) and rt["passed"]
    doc = {"passed": passed, "seed": seed, "max_n": args.max_n,
           "criteria": [r.to_json() for r in results], "roundtrip": rt}
    if args.pretty:
        lines = [r.line() for r in results]
        lines.append(f"[{'PASS' if rt['passed'] else 'FAIL'}] JSON round trip ({rt['artifacts']} artifacts)")
        lines.append("ALL PASS" if passed else "FAILURES PRESENT")
        return (OK if passed else VIOLATION), "\n".join(lines)
    return (OK if passed else VIOLATION), doc


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="filicoh", description="Exact cohomology of Filippov algebras.")
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    a = sub.add_parser("algebra", help="build algebras")
    a.add_argument("kind", choices=["simple", "sum"])
    a.add_argument("files", nargs="*")
    a.add_argument("--n", type=int)
    a.add_argument("--signature")
    a.set_defaults(func=cmd_algebra)

    c = sub.add_parser("check", help="check identities")
    c.add_argument("what", choices=["fi"])
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("killing", help="trace form reports")
    k.add_argument("--mode", choices=["kasymov", "gram"], default="gram")
    k.add_argument("file")
    k.set_defaults(func=cmd_killing)

    h = sub.add_parser("cohomology", help="dimensions of Z, B, H")
    h.add_argument("--action", choices=list(ACTIONS), required=True)
    h.add_argument("--degree", type=int, required=True)
    h.add_argument("file")
    h.set_defaults(func=cmd_cohomology)

    e = sub.add_parser("extend", help="central extension by a cocycle")
    e.add_argument("file")
    e.add_argument("--cocycle", required=True)
    e.add_argument("--trivialize", action="store_true")
    e.set_defaults(func=cmd_extend)

    d = sub.add_parser("deform", help="deformation by an adjoint cocycle")
    d.add_argument("file")
    d.add_argument("--cocycle", required=True)
    d.add_argument("--order", type=int, choices=[1, 2], default=1)
    d.add_argument("--trivialize", action="store_true")
    d.set_defaults(func=cmd_deform)

    w = sub.add_parser("whitehead-suite", help="run the full verification battery")
    w.add_argument("--max-n", type=int, default=5)
    w.add_argument("--seed", type=int)
    w.set_defaults(func=cmd_suite)

    for sp in (a, c, k, h, e, d, w):
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    return p


def run(argv=None):
    """Parse and dispatch; returns ``(exit_code, payload)`` without printing."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise InputError("no command given")
        return args.func(args)
    except (InputError, ser.FormatError, AlgebraError, ExtensionError) as exc:
        return INPUT_ERROR, {"error": str(exc)}
    except CohomologyError as exc:
        return INPUT_ERROR, {"error": str(exc)}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    pretty = "--pretty" in argv
    logging.basicConfig(level=logging.INFO if "-v" in argv or "--verbose" in argv else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    code, payload = run(argv)
    if isinstance(payload, str):
        print(payload)
    else:
        print(ser.dumps(payload, pretty=pretty))
    if code == INPUT_ERROR:
        print(f"filicoh: {payload.get('error', 'input error')}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
