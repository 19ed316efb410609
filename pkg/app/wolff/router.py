"""
CLI commands for the Wolff falsification lab.
"""
import argparse
from pathlib import Path

from app.core.exceptions import DomainError
from app.core.rendering import format_output
from app.core.routing import CommandResult, CommandRouter, arg
from app.wolff.schemas import TrialConfig
from app.wolff.service import extremal_report, run_suite, summarize_suite, write_reports

router = CommandRouter(tags=["Wolff lab"])

TRIAL_COLUMNS = [
    "seed", "n", "m", "R", "lines", "count", "bound", "ratio", "violated", "float_format", "relative_guard",
]


@router.command(
    "wolff",
    help="Run falsification trials of the nested Wolff bound from a JSON config",
    arguments=[
        arg("--config", required=True, help="JSON file: {n, m, R, r[], rho[], seeds[], C, eps, budget}"),
        arg("--output", dest="reports", default=None, help="append one JSON report per trial to this file"),
    ],
)
def wolff_trials(args: argparse.Namespace) -> CommandResult:
    """Any trial whose count exceeds the bound is a finding."""
    path = Path(args.config)
    if not path.is_file():
        raise DomainError(f"config file not found: {path}")
    config = TrialConfig.model_validate_json(path.read_text(encoding="utf-8"))
    reports = run_suite(config)
    if args.reports:
        write_reports(reports, args.reports)

    lines = [
        f"seed {r.seed}: count {r.count} / bound {r.bound:.6g} (ratio {r.ratio:.3g})"
        + (" VIOLATED" if r.violated else "")
        for r in reports
    ]
    summary = summarize_suite(config, reports)
    lines.append(
        f"{summary.nonzero_counts}/{summary.seeds} trials with nonzero count, "
        f"{summary.violations} violations, max ratio {summary.max_ratio:.3g} ({summary.float_format})"
        + ("" if summary.exercised else ", bound never exercised")
    )
    rows = [r.model_dump(mode="json") for r in reports]
    output = format_output(args.format, "\n".join(lines), reports, rows=rows, columns=TRIAL_COLUMNS)
    return CommandResult(output=output, finding=any(r.violated for r in reports))


@router.command(
    "extremal",
    help="Size of the lines concentrated near one codimension-j subspace against its bound",
    arguments=[
        arg("n", type=int),
        arg("j", type=int),
        arg("R", type=float),
        arg("--seed", type=int, default=0),
    ],
)
def extremal(args: argparse.Namespace) -> CommandResult:
    report = extremal_report(args.n, args.j, args.R, args.seed)
    text = (
        f"{report.count} lines ({report.satisfying} with full occupancy) "
        f"against bound {report.bound:.6g}: ratio {report.ratio:.3g}"
    )
    output = format_output(args.format, text, report)
    return CommandResult(output=output)
