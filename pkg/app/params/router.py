"""
CLI commands for the multigrain parameter verifier.
"""
import argparse

from app.core.exceptions import DomainError
from app.core.rendering import format_output
from app.core.routing import CommandResult, CommandRouter, arg
from app.params.service import verify_identities, verify_sweep
from app.params.symbolic import verify_identities_symbolic

router = CommandRouter(tags=["Parameter identities"])

REPORT_COLUMNS = ["n", "m", "convention", "all_zero", "p0", "p0_closed_form_match", "cross_module_match"]


def _summary(convention, all_zero: bool, p0: str, p0_match: bool) -> str:
    verdict = f"all residuals vanish under the {convention.value} convention" if all_zero else "residuals do not vanish"
    return f"{verdict}\np_0 = {p0} (closed form {'matches' if p0_match else 'differs'})"


@router.command(
    "verify-params",
    help="Verify X_i = Y_i = 0 and the closed form of p_0 at (n, m), or symbolically in n",
    arguments=[
        arg("values", type=int, nargs="+", metavar="N", help="n m, or m with --symbolic"),
        arg("--symbolic", action="store_true", help="treat n as an indeterminate; takes m only"),
    ],
)
def verify_params(args: argparse.Namespace) -> CommandResult:
    """
    `verify-params 5 2` checks the numeric pipeline; `verify-params --symbolic 3` proves the
    residuals vanish identically in n. A failed identity is a finding.
    """
    if args.symbolic:
        if len(args.values) != 1:
            raise DomainError("--symbolic takes exactly one argument m")
        report = verify_identities_symbolic(args.values[0])
        text = _summary(report.convention, report.all_zero, report.p0, report.p0_closed_form_match)
        text += f"\nvalidity domain {report.validity_domain}: {report.roots_in_domain} denominator roots inside"
        record = {
            "m": report.m,
            "convention": report.convention.value if report.convention else None,
            "all_zero": report.all_zero,
            "p0": report.p0,
            "p0_closed_form_match": report.p0_closed_form_match,
            "roots_in_domain": report.roots_in_domain,
        }
        output = format_output(args.format, text, report, rows=[record], columns=list(record))
        return CommandResult(output=output, finding=report.finding)

    if len(args.values) != 2:
        raise DomainError("verify-params takes two arguments n m")
    n, m = args.values
    report = verify_identities(n, m)
    text = _summary(report.convention, report.all_zero, report.p0, report.p0_closed_form_match)
    record = report.model_dump(mode="json")
    output = format_output(args.format, text, report, rows=[record], columns=REPORT_COLUMNS)
    return CommandResult(output=output, finding=report.finding)


@router.command(
    "sweep-params",
    help="Verify every 0 <= m <= n-2 for n <= N",
    arguments=[arg("--n-max", type=int, default=100)],
)
def sweep_params(args: argparse.Namespace) -> CommandResult:
    report = verify_sweep(args.n_max)
    text = f"{report.pairs_checked} pairs checked, {len(report.failures)} failures"
    if report.failures:
        text += "\n" + "\n".join(f"fails at n={n}, m={m}" for n, m in report.failures)
    record = {"n_max": report.n_max, "pairs_checked": report.pairs_checked, "failures": len(report.failures)}
    output = format_output(args.format, text, report, rows=[record], columns=list(record))
    return CommandResult(output=output, finding=not report.ok)
