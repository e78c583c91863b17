"""Command-line front end: one subcommand per operation, JSON in and out.

Exit codes: 0 success, 2 bad input or a violated precondition (error JSON
``{"code", "message"}`` on stdout), 1 internal failure or a certificate
that does not verify.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import InvalidInput, LiftError
from .operations import RUNNERS, run, verify
from .repro import repro

# subcommand -> (flag, help) pairs; flag names double as parameter keys
SUMMARY = {
    "lift-sl": "lift an SL_k(Z/n) matrix to SL_k(Z)",
    "lift-sp": "lift an Sp_2k(Z/n) matrix to Sp_2k(Z)",
    "extend-row": "complete a unimodular vector to a symplectic matrix with that row",
    "extend-col": "complete a unimodular vector to a symplectic matrix with that column",
    "multi-lift-sl": "SL_k(Z) matrix whose row i matches a target mod I_i",
    "multi-lift-sp": "Sp_2k(Z) matrix whose row i matches a target mod I_i",
    "surject-sl": "SL_k(Z) matrix whose rows lie in given weighted projective classes",
    "surject-sp": "Sp_2k(Z) matrix whose rows lie in given weighted projective classes",
    "crt-proj-lift": "combine points over coprime moduli into one point",
    "crt-proj-reduce": "reduce a point modulo each factor of its modulus",
    "enumerate-classes": "list the weighted projective classes mod n",
    "diag-det-one": "residues d_i = a_i mod n_i whose product is 1 mod prod(n_i)",
    "coprime-shift": "find t with gcd(a + t*b, m) = 1",
    "usc-shift": "shift the first entry by the ideal of the rest into a unit mod a target",
    "cmh-perturb": "multiples of n making a vector unital over Z",
    "obstruction": "test whether an orthogonal row class is obstructed mod a prime",
}


FLAGS = {
    "lift-sl": [("matrix", "matrix as a JSON nested list"), ("modulus", "n >= 1")],
    "lift-sp": [("matrix", "2k x 2k matrix as a JSON nested list"), ("modulus", "n >= 1")],
    "extend-row": [("vector", "row of length 2k with an entry +-1"), ("position", "1-based row index")],
    "extend-col": [("vector", "column of length 2k with an entry +-1"), ("position", "1-based column index")],
    "multi-lift-sl": [("rows", "target rows as a JSON nested list"), ("ideals", "comma-separated moduli, one per row")],
    "multi-lift-sp": [("rows", "target rows as a JSON nested list"), ("ideals", "comma-separated moduli, one per row")],
    "surject-sl": [("points", "JSON list of point objects")],
    "surject-sp": [("points", "JSON list of point objects")],
    "crt-proj-lift": [("points", "JSON list of point objects")],
    "crt-proj-reduce": [("point", "JSON point object"), ("factors", "comma-separated coprime factors")],
    "enumerate-classes": [("modulus", "n >= 2"), ("weights", "comma-separated positive weights")],
    "diag-det-one": [("values", "comma-separated values"), ("moduli", "comma-separated coprime moduli")],
    "coprime-shift": [("a", "integer"), ("b", "integer coprime to a"), ("m", "nonzero modulus")],
    "usc-shift": [("entries", "comma-separated entries"), ("target", "target modulus >= 2")],
    "cmh-perturb": [("entries", "comma-separated entries"), ("modulus", "ideal modulus")],
    "obstruction": [("point", "JSON point object, odd prime modulus"), ("p", "positive band size"),
                    ("q", "negative band size"), ("band", "first_p or last_q")],
}


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", help="JSON object of parameters (file path, or - for stdin)")
    common.add_argument("--out", help="write the result JSON here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = _Parser(prog="stronglift", description="Exact SL/Sp lifts over the integers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, flags in FLAGS.items():
        p = sub.add_parser(name, parents=[common], help=SUMMARY[name])
        for flag, text in flags:
            p.add_argument(f"--{flag}", dest=flag, help=text)
        if name == "usc-shift":
            p.add_argument("--mod", action="store_true", default=None,
                           help="entries need only be unital modulo the target")
    v = sub.add_parser("verify", parents=[common], help="re-check a certificate from scratch")
    v.add_argument("--certificate", help="certificate JSON file, or - for stdin")
    r = sub.add_parser("repro", parents=[common], help="run the bundled example fixtures")
    r.add_argument("--budget-small", action="store_true", help="skip enumerations with n > 101")
    r.add_argument("--fixtures", help="fixture file to use instead of the bundled one")
    return parser


def _read_json(source: str):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{source} is not valid JSON: {exc.msg}") from None


def _params(args) -> dict:
    params = {}
    if args.input:
        data = _read_json(args.input)
        if not isinstance(data, dict):
            raise InvalidInput("--input must hold a JSON object")
        params.update(data)
    for flag, _ in FLAGS.get(args.command, []):
        value = getattr(args, flag, None)
        if value is not None:
            params[flag] = value
    if getattr(args, "mod", None):
        params["mod"] = True
    return params


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _error(code: str, message: str) -> None:
    print(json.dumps({"code": code, "message": message}))


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _ArgError as exc:
        _error("InvalidInput", str(exc))
        return 2
    try:
        if args.command == "verify":
            source = args.certificate or args.input
            if not source:
                raise InvalidInput("verify needs --certificate FILE")
            checks = verify(_read_json(source))
            ok = all(passed for _, passed in checks)
            _emit({"valid": ok, "checks": [{"name": n, "pass": p} for n, p in checks]}, args.out)
            return 0 if ok else 1
        if args.command == "repro":
            report = repro(args.fixtures, args.budget_small, args.seed)
            _emit(report, args.out)
            return 0 if report["passed"] else 1
        if args.command not in RUNNERS:
            raise InvalidInput(f"unknown subcommand {args.command}")
        cert = run(args.command, _params(args))
        _emit(cert.to_json(), args.out)
        return 0
    except LiftError as exc:
        _error(exc.code, exc.message)
        return 2
    except RecursionError as exc:
        _error("InvalidInput", f"input nested too deeply: {exc}")
        return 2
    except Exception as exc:  # anything else is our bug, not the caller's
        _error("InternalError", f"{type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
