"""Command-line interface.

Every command prints one JSON document (stable key order) on stdout, or a
plain-text rendering with ``--human``.  Exit status:

    0  success (and, for exists/invert/verify, a positive answer)
    1  no quadratic inverse exists / the pair is not an inverse pair
    2  invalid input
    3  not a permutation polynomial (including quadratics modulo an odd prime)
    4  resource limit exceeded
    5  oracle disagreement or failed verification
    6  I/O error writing a table file

Table files: a header line ``QPPTABLE v1 N=<N>`` followed by N lines, the
image of x = 0..N-1 in decimal, each newline-terminated.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import InvalidInputError, QPPError
from .inverse import (
    check_pair,
    exists_quadratic_inverse,
    quadratic_inverse,
)
from .polyring import (
    PermutationTable,
    PolynomialModN,
    QuadraticPP,
    compose,
    invert_table,
    is_permutation_polynomial,
    normalize_shift,
    permutation_table,
    shift_inverse,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_DISAGREEMENT = 5
EXIT_IO = 6

TABLE_MAGIC = "QPPTABLE v1"


class CommandResult(Exception):
    """Carries a finished document plus the exit status for it."""

    def __init__(self, outputs: dict, code: str, exit_code: int, message: str = ""):
        super().__init__(message)
        self.outputs = outputs
        self.code = code
        self.exit_code = exit_code
        self.message = message


def parse_int(text: str) -> int:
    """Decimal or ``0x``-prefixed hexadecimal integer."""
    t = text.strip().lower()
    neg = t.startswith("-")
    if neg:
        t = t[1:]
    try:
        value = int(t[2:], 16) if t.startswith("0x") else int(t, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    return -value if neg else value


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def format_table(table: PermutationTable) -> str:
    lines = [f"{TABLE_MAGIC} N={table.modulus}"]
    lines.extend(str(v) for v in table)
    return "\n".join(lines) + "\n"


def read_table(path: str | Path) -> PermutationTable:
    lines = Path(path).read_text().split("\n")
    header = lines[0]
    if not header.startswith(TABLE_MAGIC + " N="):
        raise InvalidInputError(f"{path}: missing '{TABLE_MAGIC}' header")
    n = int(header.split("N=", 1)[1])
    body = lines[1:]
    if len(body) != n + 1 or body[-1] != "":
        raise InvalidInputError(f"{path}: expected {n} newline-terminated entries")
    return PermutationTable(tuple(int(v) for v in body[:-1]))


def _qpp(args) -> QuadraticPP:
    return QuadraticPP(args.N, args.f1, args.f2)


def _existence_rows(report) -> list[dict]:
    return [
        {"p": r.prime, "n_N": r.n_N, "n_F": r.n_F, "threshold": r.threshold,
         "satisfied": r.satisfied}
        for r in report.rows
    ]


def cmd_check(args) -> dict:
    poly = PolynomialModN.quadratic(args.N, args.f1, args.f2, args.h0 or 0)
    shifted, h0 = normalize_shift(poly)
    cert = is_permutation_polynomial(shifted)
    outputs = {
        "polynomial": list(shifted.coeffs),
        "h0": h0,
        "is_pp": cert.is_pp,
        "case": cert.case,
        "degenerate_linear": cert.degenerate,
        "rows": [
            {"p": r.prime, "exponent": r.exponent, "rule": r.rule, "satisfied": r.satisfied}
            for r in cert.rows
        ],
    }
    try:
        QuadraticPP.from_polynomial(shifted)
    except QPPError as exc:
        raise CommandResult(outputs, exc.code, exc.exit_code, str(exc)) from None
    return outputs


def cmd_exists(args) -> dict:
    report = exists_quadratic_inverse(_qpp(args))
    outputs = {"exists": report.exists, "rows": _existence_rows(report)}
    if not report.exists:
        raise CommandResult(outputs, "no-quadratic-inverse", EXIT_NEGATIVE)
    return outputs


def cmd_invert(args) -> dict:
    F = _qpp(args)
    report = exists_quadratic_inverse(F)
    outcome = quadratic_inverse(F, verify=args.verify)
    outputs = {
        "exists": report.exists,
        "rows": _existence_rows(report),
        "kind": outcome.kind,
        "inverses": [list(c) for c in outcome],
    }
    if args.h0 is not None:
        h0 = args.h0 % F.modulus
        outputs["h0"] = h0
        outputs["shifted_inverses"] = [
            list(shift_inverse(G, h0).coeffs) for G in outcome.polynomials()
        ]
    if args.verify:
        identity = PermutationTable.identity(F.modulus)
        table = F.table()
        outputs["verified"] = all(
            table.then(permutation_table(G)) == identity for G in outcome.polynomials()
        )
        if not outputs["verified"]:
            raise CommandResult(outputs, "verification-failed", EXIT_DISAGREEMENT)
    if not outcome:
        raise CommandResult(outputs, "no-quadratic-inverse", EXIT_NEGATIVE)
    return outputs


def cmd_table(args) -> dict:
    F = _qpp(args)
    poly = F.poly
    if args.h0:
        poly = poly + PolynomialModN(F.modulus, (args.h0,))
    table = permutation_table(poly)
    if args.direction == "deinterleave":
        table = invert_table(table)
    outputs = {"path": str(args.out), "direction": args.direction, "length": table.modulus}
    try:
        Path(args.out).write_text(format_table(table))
    except OSError as exc:
        raise CommandResult(outputs, "io-error", EXIT_IO, f"{args.out}: {exc.strerror}") from None
    return outputs


def cmd_verify(args) -> dict:
    F = _qpp(args)
    G = PolynomialModN.quadratic(F.modulus, args.g1, args.g2)
    pair = check_pair(F, G)
    outputs = {
        "three_point": pair.three_point,
        "failing_points": list(pair.failing_points),
        "twelve_f2_g2": pair.twelve_f2_g2,
        "is_inverse": pair.is_inverse,
    }
    if args.verify:
        residual = compose(G, F.poly)
        pointwise = all(residual(x) == x for x in range(F.modulus))
        outputs["pointwise"] = pointwise
        if pointwise != pair.is_inverse:
            raise CommandResult(outputs, "verification-failed", EXIT_DISAGREEMENT)
    if not pair.is_inverse:
        raise CommandResult(outputs, "not-inverse", EXIT_NEGATIVE)
    return outputs


def cmd_sweep(args) -> dict:
    from . import oracle

    report = oracle.sweep(
        args.N_lo,
        args.N_hi,
        include_linear=args.include_linear,
        budget=args.budget,
        search_budget=args.search_budget,
        dmax=args.dmax,
        workers=args.workers,
    )
    outputs = report.as_dict()
    if not report.ok:
        raise CommandResult(outputs, "disagreement", EXIT_DISAGREEMENT)
    return outputs


def _render_human(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(pad + ", ".join(f"{k}={json.dumps(v)}" for k, v in item.items()))
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(pad + json.dumps(value))
    return lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="human", action="store_false", help="JSON output (default)")
    fmt.add_argument("--human", dest="human", action="store_true", help="plain-text output")
    common.set_defaults(human=False)

    parser = argparse.ArgumentParser(
        prog="qppinv",
        description="Quadratic inverses of quadratic permutation polynomials over Z_N.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def qpp_command(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("N", type=parse_int)
        p.add_argument("f1", type=parse_int)
        p.add_argument("f2", type=parse_int)
        p.set_defaults(func=func)
        return p

    p = qpp_command("check", cmd_check, "is h0 + f1*x + f2*x^2 a permutation polynomial")
    p.add_argument("--h0", type=parse_int, default=None)
    qpp_command("exists", cmd_exists, "does a quadratic inverse exist")
    p = qpp_command("invert", cmd_invert, "compute the quadratic inverse(s)")
    p.add_argument("--h0", type=parse_int, default=None,
                   help="also invert the shifted polynomial h0 + F(x)")
    p.add_argument("--verify", action="store_true", help="re-check every inverse on all of Z_N")
    p = qpp_command("table", cmd_table, "write an interleaver or deinterleaver table")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--direction", choices=("interleave", "deinterleave"), default="interleave")
    p.add_argument("--h0", type=parse_int, default=None)
    p = qpp_command("verify", cmd_verify, "is g1*x + g2*x^2 an inverse of F")
    p.add_argument("g1", type=parse_int)
    p.add_argument("g2", type=parse_int)
    p.add_argument("--verify", action="store_true", help="also compare on all of Z_N")

    from .oracle import SEARCH_BUDGET, SWEEP_BUDGET

    p = sub.add_parser("sweep", parents=[common], help="brute-force cross-check over a modulus range")
    p.add_argument("N_lo", type=parse_int)
    p.add_argument("N_hi", type=parse_int)
    p.add_argument("--budget", type=parse_int, default=SWEEP_BUDGET,
                   help="cap on sum of N^3 over the range")
    p.add_argument("--search-budget", type=parse_int, default=SEARCH_BUDGET,
                   help="cap on N^d for the counterexample inverse search")
    p.add_argument("--dmax", type=parse_int, default=4)
    p.add_argument("--include-linear", action="store_true", help="also test f2 = 0")
    p.add_argument("--workers", type=parse_int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def _inputs(args) -> dict:
    skip = {"func", "human", "verbose", "command"}
    return {k: (str(v) if isinstance(v, Path) else v)
            for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    doc = {"command": args.command, "inputs": _inputs(args)}
    exit_code = EXIT_OK
    try:
        outputs = args.func(args)
        doc["outputs"] = outputs
        doc["status"] = {"ok": True, "code": "ok"}
    except CommandResult as res:
        exit_code = res.exit_code
        doc["outputs"] = res.outputs
        doc["status"] = {"ok": exit_code == EXIT_OK, "code": res.code}
        if res.message:
            doc["status"]["message"] = res.message
    except QPPError as exc:
        exit_code = exc.exit_code
        doc["outputs"] = None
        doc["status"] = {"ok": False, "code": exc.code, "message": str(exc)}
    doc["status"]["exit_code"] = exit_code
    doc = _jsonable(doc)
    if args.human:
        sys.stdout.write("\n".join(_render_human(doc)) + "\n")
    else:
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
