"""
CLI commands for the broad-to-linear optimizer and the state-of-the-art table.
"""
import argparse

from app.core.rendering import format_output, render_exponent
from app.core.routing import CommandResult, CommandRouter, arg
from app.linear.schemas import TABLE_COLUMNS
from app.linear.service import candidate_sweep, linear_exponent, state_of_art_table

router = CommandRouter(tags=["Linear exponents"])

CANDIDATE_COLUMNS = ["k", "p_broad", "p_limit", "p_max"]


@router.command(
    "linear",
    help="Optimal linear exponent for dimension n",
    arguments=[
        arg("n", type=int),
        arg("--candidates", action="store_true", help="list every k with its broad and limit exponents"),
    ],
)
def linear(args: argparse.Namespace) -> CommandResult:
    if args.candidates:
        rows = candidate_sweep(args.n)
        text = "\n".join(
            f"k = {row.k}: broad {render_exponent(row.p_broad)}, limit {render_exponent(row.p_limit)}"
            for row in rows
        )
        records = [row.model_dump() for row in rows]
        return CommandResult(output=format_output(args.format, text, rows, records, CANDIDATE_COLUMNS))

    result = linear_exponent(args.n)
    text = f"p = {result.display} (k_opt = {result.k_opt}{', tie' if result.tie else ''})"
    if not result.upper_ok:
        text += f"\nupper constraint 2 + 2/(k-2) fails at k_opt = {result.k_opt}"
    record = {
        "n": result.n,
        "k_opt": result.k_opt,
        "p_num": result.p.numerator,
        "p_den": result.p.denominator,
        "upper_ok": result.upper_ok,
        "tie": result.tie,
    }
    output = format_output(args.format, text, result, rows=[record], columns=list(record))
    return CommandResult(output=output, finding=not result.upper_ok)


@router.command(
    "table",
    help="State-of-the-art exponent table for n_min <= n <= n_max",
    arguments=[arg("n_min", type=int), arg("n_max", type=int)],
)
def table(args: argparse.Namespace) -> CommandResult:
    """A computed exponent that disagrees with its published value is a finding."""
    rows = state_of_art_table(args.n_min, args.n_max)
    lines = []
    for row in rows:
        prior = f"{render_exponent(row.prior_p)} ({row.attribution})" if row.prior_p is not None else "-"
        lines.append(f"n = {row.n}: new {render_exponent(row.new_p)}, prior {prior}, winner {row.winner}")
    boundary = [str(row.n) for row in rows if row.k_opt == row.n]
    lines.append(f"k = n optimal at: {', '.join(boundary) or 'none'}")
    records = [row.csv_record() for row in rows]
    output = format_output(args.format, "\n".join(lines), records, rows=records, columns=TABLE_COLUMNS)
    return CommandResult(output=output, finding=any(row.published_match is False for row in rows))
