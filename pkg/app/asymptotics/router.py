"""
CLI commands for the asymptotic constants and the convergence sweep.
Decimals in these reports always travel with the precision they were computed at.
"""
import argparse

from app.asymptotics.schemas import FIT_COLUMNS, FitSummary, HighPrecisionReal, LambdaComparison
from app.asymptotics.service import (
    asymptotic_fit,
    compare_with_registry,
    cubic_report,
    exponent_bounds,
    nu_lambda,
)
from app.core.config import settings
from app.core.rendering import format_output, render, to_decimal
from app.core.routing import CommandResult, CommandRouter, arg

router = CommandRouter(tags=["Asymptotics"])

PRECISION = arg("--precision", type=int, default=settings.DEFAULT_PRECISION_BITS, help="bits")


def _short(q) -> str:
    """Exact value when it fits on a line; the csv/json reports always carry it in full."""
    return render(q) if q.denominator.bit_length() <= 128 else to_decimal(q, 12)


def _enclosure(label: str, value: HighPrecisionReal) -> str:
    return f"{label} in [{value.lower}, {value.upper}] ~ {value.decimal} ({value.precision} bits)"


VERDICTS = {True: "below", False: "not below", None: "undecided at the published digits"}


def _comparison(entry: LambdaComparison) -> str:
    return f"lambda vs {entry.label} ({entry.annotation}): {VERDICTS[entry.below]}"


@router.command("cubic", help="Enclose the root of 2x^3 + 3x^2 - 2, nu and lambda", arguments=[PRECISION])
def cubic(args: argparse.Namespace) -> CommandResult:
    report = cubic_report(args.precision)
    text = "\n".join([
        _enclosure("root", report.root),
        _enclosure("cardano", report.cardano),
        _enclosure("nu", report.nu),
        _enclosure("lambda", report.lam),
        f"cardano agrees: {report.agree}; lambda consistent: {report.lambda_consistent}; "
        f"root unique: {report.certificate.unique}",
        *(_comparison(entry) for entry in report.registry),
    ])
    record = {
        "precision": report.root.precision,
        "root_decimal": report.root.decimal,
        "nu_decimal": report.nu.decimal,
        "lambda_decimal": report.lam.decimal,
        "agree": report.agree,
        "lambda_consistent": report.lambda_consistent,
    }
    output = format_output(args.format, text, report, rows=[record], columns=list(record))
    finding = not (report.agree and report.lambda_consistent and report.certificate.unique)
    return CommandResult(output=output, finding=finding)


@router.command(
    "asymptotic",
    help="Exact n (p_lin(n) - 2) at 1-2-5 checkpoints against lambda",
    arguments=[
        arg("--n-max", type=int, required=True),
        arg("--n-min", type=int, default=3),
        arg("--checkpoints", type=int, nargs="+", help="explicit n values instead of the 1-2-5 series"),
        PRECISION,
    ],
)
def asymptotic(args: argparse.Namespace) -> CommandResult:
    rows = asymptotic_fit(args.n_min, args.n_max, ns=args.checkpoints, precision=args.precision)
    nu, lam, _ = nu_lambda(args.precision)
    lines = [
        f"n = {row.n}: k_opt = {row.k_opt}, gap = {_short(row.gap)}, "
        f"|gap - lambda| ~ {row.deviation.decimal}, |k_opt/n - nu| ~ {row.k_deviation.decimal}"
        for row in rows
    ]
    registry = compare_with_registry(lam)
    lines.extend(_comparison(entry) for entry in registry)
    summary = FitSummary(
        rows=rows,
        lam=HighPrecisionReal.from_interval(lam),
        nu=HighPrecisionReal.from_interval(nu),
        registry=registry,
    )
    output = format_output(args.format, "\n".join(lines), summary, rows=[row.csv_record() for row in rows], columns=FIT_COLUMNS)
    return CommandResult(output=output)


@router.command(
    "exponent-bounds",
    help="Square-root enclosure of p_n(k) for 2 <= k <= n-1",
    arguments=[arg("n", type=int), arg("k", type=int), PRECISION],
)
def square_root_bounds(args: argparse.Namespace) -> CommandResult:
    report = exponent_bounds(args.n, args.k, args.precision)
    text = "\n".join([
        _enclosure("lower bound", report.lower),
        f"p = {render(report.p)}",
        _enclosure("upper bound", report.upper),
        f"certified: {report.certified}",
    ])
    output = format_output(args.format, text, report)
    return CommandResult(output=output, finding=report.certified is False)
