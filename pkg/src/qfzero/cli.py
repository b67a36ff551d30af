"""Command-line front end for the solver and the quaternion applications.

Exit codes are part of the contract: 0 carries an answer or solution, 1 a
non-existence verdict with a certificate, 2 a degree-budget exhaustion, and
64 usage or parse errors.  With --json the report is a single object
{request, answer, certificate?, verification}; every verification entry is
recomputed from scratch rather than copied from the solver.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .artin_schreier import minimize_param, symbol
from .binary_norm import BudgetExhausted, NormEquation, solve_binary
from .fields import GF
from .localsolve import norm_form_represents
from .parsing import ParseError, parse_place, parse_ratfunc
from .quaternary import QuaternaryForm, solve_quaternary_report
from .quaternion import (
    EmbeddingImpossible,
    QuaternionAlgebra,
    _place_sort_key,
    construct_ramified,
    embed_subfield,
    is_split,
    quat_mul,
    ramified_places,
)


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code fixed at 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--field", type=int, default=2, metavar="Q",
        help="field size q = 2^k (default 2)",
    )
    common.add_argument(
        "--modulus", default=None, metavar="MASK",
        help="GF(2)-irreducible defining the field, as a bitmask literal like 0b10011",
    )
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument(
        "--max-degree", type=int, default=24, dest="max_degree",
        help="degree budget for the randomized searches (default 24)",
    )
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument(
        "--threads", type=int, default=1,
        help="reserved; the pipeline is single-threaded",
    )

    parser = _Parser(prog="qfzero")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve-quaternary", parents=[common],
                       help="zero of a1*(x1^2+x1*x2+a2*x2^2) + a3*(x3^2+x3*x4+a4*x4^2)")
    for name in ("a1", "a2", "a3", "a4"):
        p.add_argument(f"--{name}", required=True)

    p = sub.add_parser("solve-binary", parents=[common],
                       help="solve a1*(x^2+x*y+a2*y^2) = c")
    for name in ("a1", "a2", "c"):
        p.add_argument(f"--{name}", required=True)

    p = sub.add_parser("symbol", parents=[common],
                       help="additive quadratic residue symbol of a at a place")
    p.add_argument("--a", required=True)
    p.add_argument("--place", required=True)

    p = sub.add_parser("minimize", parents=[common],
                       help="clear even pole parts of a norm-form parameter")
    p.add_argument("--a", required=True)

    p = sub.add_parser("is-split", parents=[common],
                       help="decide splitting of the algebra [a, b) and give a witness")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("ramified-places", parents=[common],
                       help="places where [a, b) is locally a division algebra")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("construct-ramified", parents=[common],
                       help="algebra ramified exactly at a comma-separated list of places")
    p.add_argument("--places", required=True)

    p = sub.add_parser("embed-subfield", parents=[common],
                       help="u in [a, b) with u^2 + u = c")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)

    return parser


_OPERANDS = {
    "solve-quaternary": ("a1", "a2", "a3", "a4"),
    "solve-binary": ("a1", "a2", "c"),
    "symbol": ("a", "place"),
    "minimize": ("a",),
    "is-split": ("a", "b"),
    "ramified-places": ("a", "b"),
    "construct-ramified": ("places",),
    "embed-subfield": ("a", "b", "c"),
}


def _field_from(args) -> GF:
    q = args.field
    if q < 2 or q & (q - 1):
        raise ValueError(f"field size must be a power of two, got {q}")
    modulus = int(args.modulus, 0) if args.modulus else None
    return GF(q.bit_length() - 1, modulus)


def _request_echo(args) -> dict:
    req = {
        "command": args.command,
        "field": args.field,
        "seed": args.seed,
        "max_degree": args.max_degree,
    }
    if args.modulus:
        req["modulus"] = args.modulus
    for name in _OPERANDS[args.command]:
        req[name] = getattr(args, name)
    return req


def _certificate_payload(cert) -> dict:
    data = {
        "kind": cert.kind,
        "place": str(cert.place),
        "normalized_coefficients": [str(p) for p in cert.params],
    }
    if cert.symbols is not None:
        data["symbols"] = list(cert.symbols)
    return data


def _cmd_solve_quaternary(args, gf):
    coeffs = [parse_ratfunc(getattr(args, n), gf) for n in ("a1", "a2", "a3", "a4")]
    form = QuaternaryForm.from_pair_coefficients(*coeffs)
    try:
        report = solve_quaternary_report(
            form, random.Random(args.seed), args.max_degree
        )
    except BudgetExhausted as exc:
        return {"answer": {"status": "budget-exhausted", "detail": str(exc)}}, 2
    if report.verdict == "zero":
        vec = report.vector
        answer = {"status": "isotropic", "vector": [str(x) for x in vec]}
        if report.common_value is not None:
            answer["common_value"] = str(report.common_value.value)
        verification = {
            "Q(v)": str(form.evaluate(vec)),
            "vector_nonzero": "pass" if any(not x.is_zero for x in vec) else "fail",
        }
        return {"answer": answer, "verification": verification}, 0
    cert = report.certificate
    return {
        "answer": {"status": "anisotropic"},
        "certificate": _certificate_payload(cert),
        "verification": {"certificate_recheck": "pass" if cert.verify() else "fail"},
    }, 1


def _cmd_solve_binary(args, gf):
    a1 = parse_ratfunc(args.a1, gf)
    a2 = parse_ratfunc(args.a2, gf)
    c = parse_ratfunc(args.c, gf)
    eq = NormEquation.from_coefficients(a1, a2, c)
    try:
        x, y = solve_binary(eq, random.Random(args.seed), args.max_degree)
    except BudgetExhausted as exc:
        return {"answer": {"status": "budget-exhausted", "detail": str(exc)}}, 2
    residual = a1 * (x * x + x * y + a2 * y * y) + c
    return {
        "answer": {"x": str(x), "y": str(y)},
        "verification": {"a1*(x^2+x*y+a2*y^2)+c": str(residual)},
    }, 0


def _cmd_symbol(args, gf):
    a = parse_ratfunc(args.a, gf)
    place = parse_place(args.place, gf)
    value = symbol(a, place)
    return {
        "answer": {"symbol": value},
        "verification": {"recomputed": str(symbol(a, place))},
    }, 0


def _cmd_minimize(args, gf):
    a = parse_ratfunc(args.a, gf)
    reduced, shift = minimize_param(a)
    residual = a + reduced + shift * shift + shift
    return {
        "answer": {"reduced": str(reduced), "shift": str(shift)},
        "verification": {"a+reduced+shift^2+shift": str(residual)},
    }, 0


def _cmd_is_split(args, gf):
    alg = QuaternionAlgebra(parse_ratfunc(args.a, gf), parse_ratfunc(args.b, gf))
    split, witness = is_split(alg, random.Random(args.seed))
    if split:
        return {
            "answer": {
                "split": True,
                "witness": [str(x) for x in witness.coords],
            },
            "verification": {"nrd(witness)": str(witness.nrd())},
        }, 0
    places = sorted(ramified_places(alg), key=_place_sort_key)
    obstructed = all(
        not norm_form_represents(alg.a, alg.b, p) for p in places
    )
    return {
        "answer": {"split": False},
        "certificate": {"ramified_places": [str(p) for p in places]},
        "verification": {
            "count_even": "pass" if len(places) % 2 == 0 else "fail",
            "all_obstructed": "pass" if obstructed else "fail",
        },
    }, 1


def _cmd_ramified_places(args, gf):
    alg = QuaternionAlgebra(parse_ratfunc(args.a, gf), parse_ratfunc(args.b, gf))
    places = sorted(ramified_places(alg), key=_place_sort_key)
    obstructed = all(
        not norm_form_represents(alg.a, alg.b, p) for p in places
    )
    return {
        "answer": {"places": [str(p) for p in places]},
        "verification": {
            "count_even": "pass" if len(places) % 2 == 0 else "fail",
            "all_obstructed": "pass" if obstructed else "fail",
        },
    }, 0


def _cmd_construct_ramified(args, gf):
    texts = [part.strip() for part in args.places.split(",") if part.strip()]
    wanted = [parse_place(text, gf) for text in texts]
    alg = construct_ramified(wanted, random.Random(args.seed), gf=gf)
    recheck = sorted(ramified_places(alg), key=_place_sort_key)
    matches = recheck == sorted(set(wanted), key=_place_sort_key)
    return {
        "answer": {"a": str(alg.a), "b": str(alg.b)},
        "verification": {
            "ramified_places": [str(p) for p in recheck],
            "matches_request": "pass" if matches else "fail",
        },
    }, 0


def _cmd_embed_subfield(args, gf):
    alg = QuaternionAlgebra(parse_ratfunc(args.a, gf), parse_ratfunc(args.b, gf))
    c = parse_ratfunc(args.c, gf)
    try:
        u = embed_subfield(alg, c, random.Random(args.seed))
    except EmbeddingImpossible as exc:
        return {
            "answer": {"status": "no-embedding"},
            "certificate": _certificate_payload(exc.certificate),
            "verification": {
                "certificate_recheck": "pass" if exc.certificate.verify() else "fail"
            },
        }, 1
    residual = quat_mul(u, u) + u + alg.scalar(c)
    shown = "0" if residual.is_zero else str([str(x) for x in residual.coords])
    return {
        "answer": {"u": [str(x) for x in u.coords]},
        "verification": {"u^2+u+c": shown},
    }, 0


_HANDLERS = {
    "solve-quaternary": _cmd_solve_quaternary,
    "solve-binary": _cmd_solve_binary,
    "symbol": _cmd_symbol,
    "minimize": _cmd_minimize,
    "is-split": _cmd_is_split,
    "ramified-places": _cmd_ramified_places,
    "construct-ramified": _cmd_construct_ramified,
    "embed-subfield": _cmd_embed_subfield,
}


def _flatten(value, prefix, out):
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(value[key], f"{prefix}{key}.", out)
    elif isinstance(value, list):
        out.append((prefix[:-1], "[" + ", ".join(str(v) for v in value) + "]"))
    else:
        out.append((prefix[:-1], str(value)))


def _emit(payload, as_json):
    if as_json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    rows = []
    for section in ("answer", "certificate", "verification"):
        if section in payload:
            _flatten(payload[section], f"{section}.", rows)
    for key, value in rows:
        sys.stdout.write(f"{key}: {value}\n")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (None, 0) else int(exc.code)
    try:
        gf = _field_from(args)
        body, code = _HANDLERS[args.command](args, gf)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 64
    except BudgetExhausted as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 64
    payload = {"request": _request_echo(args)}
    payload.update(body)
    _emit(payload, args.json)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
