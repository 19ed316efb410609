"""
CLI commands for k-broad exponents.
"""
import argparse

from app.broad.service import bounds_sweep, chain_sweep, p_broad
from app.core.rendering import format_output
from app.core.routing import CommandResult, CommandRouter, arg

router = CommandRouter(tags=["Broad exponents"])


@router.command(
    "broad",
    help="Exact k-broad exponent p_n(k)",
    arguments=[arg("n", type=int), arg("k", type=int)],
)
def broad_exponent(args: argparse.Namespace) -> CommandResult:
    """
    Prints p_n(k) in display form, e.g. `broad 5 3` -> "p = 2 + 63/100".
    A disagreement between the product and factorial forms is a finding.
    """
    result = p_broad(args.n, args.k)
    record = {
        "n": result.n,
        "k": result.k,
        "p_num": result.p.numerator,
        "p_den": result.p.denominator,
        "closed_forms_agree": result.closed_forms_agree,
        "boundary": result.boundary,
    }
    columns = list(record)
    output = format_output(args.format, f"p = {result.display}", result, rows=[record], columns=columns)
    certificate_failed = result.bounds_certificate is not None and not result.bounds_certificate.ok
    return CommandResult(output=output, finding=not result.closed_forms_agree or certificate_failed)


@router.command(
    "bounds",
    help="Sweep the chain inequality and the squared product bounds",
    arguments=[
        arg("--n-max", type=int, default=200, help="largest n for the product bounds"),
        arg("--i-max", type=int, default=100_000, help="largest i for the chain inequality"),
    ],
)
def product_bounds(args: argparse.Namespace) -> CommandResult:
    chain_failure = chain_sweep(args.i_max)
    bounds_failure = bounds_sweep(args.n_max)
    payload = {
        "i_max": args.i_max,
        "n_max": args.n_max,
        "chain_ok": chain_failure is None,
        "chain_first_failure": chain_failure,
        "bounds_ok": bounds_failure is None,
        "bounds_failure_n": bounds_failure[0] if bounds_failure else None,
        "bounds_failure_k": bounds_failure[1] if bounds_failure else None,
    }
    text = (
        f"chain inequality, 1 <= i <= {args.i_max}: "
        f"{'ok' if chain_failure is None else f'fails at i={chain_failure}'}\n"
        f"product bounds, 2 <= k < n <= {args.n_max}: "
        f"{'ok' if bounds_failure is None else 'fails at n={}, k={}'.format(*bounds_failure)}"
    )
    output = format_output(args.format, text, payload)
    return CommandResult(output=output, finding=chain_failure is not None or bounds_failure is not None)
