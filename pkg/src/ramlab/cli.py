"""Command-line front end with JSON/CSV/text output.

Subcommands: series, verify-system, ak, ord, deriv, stable, k0, auxsearch.
All machine output renders rationals exactly as "p/q" or integer strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Optional

from .forms import (
    SystemReport,
    ak_polynomial,
    discriminant_series,
    eisenstein,
    function_tuple,
    g_series,
    theta_series,
    verify_system,
)
from .multlab import (
    DegreeBudget,
    PrecisionError,
    compute_k0,
    experiment_grid,
)
from .ring import (
    ParseError,
    SystemConfig,
    derive,
    evaluate,
    format_polynomial,
    parse,
)
from .series import TruncatedSeries
from .stability import principal_stability

__all__ = ["main", "run"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _series_payload(s: TruncatedSeries) -> dict:
    return {
        "precision": s.precision,
        "coefficients": [_frac_str(c) for c in s.coeffs],
    }


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _resolve_series(which: str, precision: int) -> TruncatedSeries:
    if which == "Delta":
        return discriminant_series(precision)
    if which == "Theta":
        return theta_series(precision)
    m = re.fullmatch(r"E(\d+)", which)
    if m:
        weight = int(m.group(1))
        if weight < 2 or weight % 2:
            raise CliError(f"no Eisenstein series of weight {weight}")
        return eisenstein(weight // 2, precision)
    m = re.fullmatch(r"g\[(\d+),(\d+)\]", which)
    if m:
        u, v = int(m.group(1)), int(m.group(2))
        try:
            return g_series(u, v, precision)
        except ValueError as exc:
            raise CliError(str(exc)) from None
    raise CliError(f"unknown series {which!r}; use E2k, g[u,v], Delta or Theta")


def _report_payload(report: SystemReport) -> dict:
    def check(eq):
        entry = {"equation": eq.name, "ok": eq.ok}
        if eq.first_mismatch is not None:
            entry["first_mismatch"] = eq.first_mismatch
        return entry

    return {
        "ok": report.ok,
        "equations": [check(eq) for eq in report.equations],
        "errata": [check(eq) for eq in report.errata],
    }


def _parse_poly(text: str, m: int):
    try:
        return parse(text, SystemConfig(m))
    except ParseError as exc:
        raise CliError(f"polynomial syntax error: {exc}") from None


def _parse_grid(spec: str) -> list[DegreeBudget]:
    """Grid spec "D0MAX:DMAX": every budget with d0 <= D0MAX and d <= DMAX."""
    m = re.fullmatch(r"(\d+):(\d+)", spec)
    if not m:
        raise CliError("grid spec must look like D0MAX:DMAX, e.g. 1:2")
    d0max, dmax = int(m.group(1)), int(m.group(2))
    return [
        DegreeBudget(d0, d) for d0 in range(d0max + 1) for d in range(dmax + 1)
    ]


def _experiment_rows(rows, summary) -> dict:
    return {
        "exponent_operational": summary.exponent_operational,
        "exponent_paper": summary.exponent_paper,
        "rows": [
            {
                "m": r.m,
                "d0": r.d0,
                "d": r.d,
                "T": r.T,
                "n_star": r.n_star,
                "ord": str(r.measured_ord),
                "ratio": _frac_str(r.ratio),
                "ratio_paper": _frac_str(r.ratio_paper),
                "witness": format_polynomial(r.witness),
                "precision": r.precision,
                "precision_limited": r.precision_limited,
            }
            for r in rows
        ],
        "max_ratio": _frac_str(summary.max_ratio),
        "max_ratio_paper": _frac_str(summary.max_ratio_paper),
        "flagged": [{"d0": b.d0, "d": b.d} for b in summary.flagged],
    }


def _rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["m", "d0", "d", "T", "n_star", "ord", "ratio_num", "ratio_den", "flag"]
    )
    for r in rows:
        writer.writerow(
            [
                r.m,
                r.d0,
                r.d,
                r.T,
                r.n_star,
                str(r.measured_ord),
                r.ratio.numerator,
                r.ratio.denominator,
                int(r.precision_limited),
            ]
        )
    return buf.getvalue()


def _render_text(record: dict) -> str:
    lines = [f"subcommand: {record['subcommand']}"]
    for key, value in record["params"].items():
        lines.append(f"  {key}: {value}")
    lines.append(json.dumps(record["payload"], indent=2))
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    # global options, also accepted after the subcommand; the subcommand copies
    # use SUPPRESS defaults so they never clobber a value given up front
    def add_common(target, suppress):
        d = argparse.SUPPRESS if suppress else None
        target.add_argument(
            "--format",
            choices=["json", "csv", "text"],
            default=argparse.SUPPRESS if suppress else "text",
        )
        target.add_argument("--out", metavar="FILE", default=d)
        target.add_argument(
            "--strict",
            action="store_true",
            default=argparse.SUPPRESS if suppress else False,
            help="exit 1 on verification failure or precision-limited results",
        )

    parser = argparse.ArgumentParser(
        prog="ramlab",
        description="Exact computations around the extended Ramanujan system.",
    )
    add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_parser(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        add_common(p, suppress=True)
        return p

    p = add_parser("series", help="dump a series' exact coefficients")
    p.add_argument("--which", required=True, help="E2k, g[u,v], Delta or Theta")
    p.add_argument("--prec", type=int, required=True)

    p = add_parser("verify-system", help="check the differential system")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prec", type=int, required=True)

    p = add_parser("ak", help="reduction polynomial for E_{2k}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prec", type=int, default=60)

    p = add_parser("ord", help="order of vanishing of an evaluated polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prec", type=int, required=True)

    p = add_parser("deriv", help="apply the derivation D")
    p.add_argument("--poly", required=True)
    p.add_argument("--m", type=int, required=True)

    p = add_parser("stable", help="principal D-stability check")
    p.add_argument("--poly", required=True)
    p.add_argument("--m", type=int, required=True)

    p = add_parser("k0", help="order of vanishing of the Theta evaluation")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prec", type=int, required=True)

    p = add_parser("auxsearch", help="auxiliary polynomial vanishing search")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d0", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--prec", type=int, default=None)
    p.add_argument("--grid", default=None, help="D0MAX:DMAX grid of budgets")

    return parser


def _dispatch(args) -> tuple[dict, int, Optional[str]]:
    """Returns (record, exit_code, csv_text or None)."""
    record: dict = {"subcommand": args.subcommand, "params": {}, "payload": {}}
    code = EXIT_OK
    csv_text = None

    if args.subcommand == "series":
        record["params"] = {"which": args.which, "prec": args.prec}
        record["payload"] = _series_payload(_resolve_series(args.which, args.prec))

    elif args.subcommand == "verify-system":
        record["params"] = {"m": args.m, "prec": args.prec}
        report = verify_system(args.m, args.prec)
        record["payload"] = _report_payload(report)
        if not report.ok:
            code = EXIT_FAIL

    elif args.subcommand == "ak":
        record["params"] = {"k": args.k, "prec": args.prec}
        ak = ak_polynomial(args.k, args.prec)
        record["payload"] = {
            "monomials": [
                {"e4_exp": a, "e6_exp": b, "coefficient": _frac_str(c)}
                for (a, b), c in sorted(ak.coefficients.items())
            ]
        }

    elif args.subcommand == "ord":
        record["params"] = {"poly": args.poly, "m": args.m, "prec": args.prec}
        poly = _parse_poly(args.poly, args.m)
        order = evaluate(poly, function_tuple(args.m, args.prec)).order()
        record["payload"] = {"ord": str(order), "finite": order.is_finite}
        if not order.is_finite and args.strict:
            code = EXIT_FAIL

    elif args.subcommand == "deriv":
        record["params"] = {"poly": args.poly, "m": args.m}
        poly = _parse_poly(args.poly, args.m)
        record["payload"] = {"derivative": format_polynomial(derive(poly))}

    elif args.subcommand == "stable":
        record["params"] = {"poly": args.poly, "m": args.m}
        poly = _parse_poly(args.poly, args.m)
        if poly.is_zero():
            raise CliError("the zero polynomial has no stability verdict")
        verdict = principal_stability(poly)
        record["payload"] = {"stable": verdict.stable}
        if verdict.stable:
            record["payload"]["cofactor"] = format_polynomial(verdict.cofactor)

    elif args.subcommand == "k0":
        record["params"] = {"m": args.m, "prec": args.prec}
        try:
            order = compute_k0(args.m, args.prec)
        except PrecisionError as exc:
            raise CliError(str(exc), code=EXIT_FAIL) from None
        record["payload"] = {"ord": order.value}

    elif args.subcommand == "auxsearch":
        if args.grid is not None:
            budgets = _parse_grid(args.grid)
        elif args.d0 is not None and args.d is not None:
            budgets = [DegreeBudget(args.d0, args.d)]
        else:
            raise CliError("auxsearch needs either --d0 and --d, or --grid")
        record["params"] = {
            "m": args.m,
            "budgets": [{"d0": b.d0, "d": b.d} for b in budgets],
            "prec": args.prec,
        }
        rows, summary = experiment_grid(args.m, budgets, args.prec)
        record["payload"] = _experiment_rows(rows, summary)
        csv_text = _rows_to_csv(rows)
        if summary.flagged and args.strict:
            code = EXIT_FAIL

    return record, code, csv_text


def run(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        record, code, csv_text = _dispatch(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.format == "json":
        output = json.dumps(record, indent=2) + "\n"
    elif args.format == "csv":
        if csv_text is None:
            print("error: csv output is only available for auxsearch", file=sys.stderr)
            return EXIT_USAGE
        output = csv_text
    else:
        output = _render_text(record)

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
