"""
Batch CLI for the restriction-exponent toolkit.

Every domain package contributes a CommandRouter; this module includes them into one parser,
binds a correlation id per run, renders the report on stdout (or --output) and maps the outcome
onto the exit status: 0 success, 1 domain or usage error, 2 mathematical finding.
"""
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence
from uuid import uuid4

from pydantic import ValidationError

from app.asymptotics.router import router as asymptotics_router
from app.broad.router import router as broad_router
from app.core.config import settings
from app.core.exceptions import DomainError, ExactDivisionError
from app.core.logger import correlation_id_var, get_logger_with_correlation
from app.core.metrics import command_duration_seconds, commands_total, write_metrics
from app.core.routing import CommandParser, CommandResult, CommandRouter, UsageError
from app.linear.router import router as linear_router
from app.params.router import router as params_router
from app.wolff.router import router as wolff_router

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FINDING = 2

ROUTERS: List[CommandRouter] = [broad_router, linear_router, params_router, asymptotics_router, wolff_router]


def build_parser() -> CommandParser:
    parser = CommandParser(prog="restriction", description=f"{settings.APP_NAME} v{settings.VERSION}")
    parser.add_argument("--format", choices=["text", "csv", "json"], default="text")
    parser.add_argument("--output", default=None, help="write the report to PATH instead of stdout")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CommandParser)
    subparsers.required = True
    for router in ROUTERS:
        for command in router.commands:
            sub = subparsers.add_parser(command.name, help=command.help, description=command.help)
            for flags, kwargs in command.arguments:
                sub.add_argument(*flags, **kwargs)
            sub.set_defaults(handler=command.handler)
    return parser


def _emit(result: CommandResult, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(result.output, encoding="utf-8")
    else:
        sys.stdout.write(result.output)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parses argv, executes one command and returns the exit status; never raises SystemExit."""
    # exact integers at n = 10^5 run to hundreds of thousands of digits
    sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_ERROR

    correlation_id = str(uuid4())
    token = correlation_id_var.set(correlation_id)
    log = get_logger_with_correlation(correlation_id)
    started = time.perf_counter()
    status = "error"
    try:
        log.info(f"Command started: {args.command}")
        result = args.handler(args)
        _emit(result, args.output)
        status = "finding" if result.finding else "ok"
        log.info(f"Command finished: {args.command}, status={status}")
        return EXIT_FINDING if result.finding else EXIT_OK
    except (DomainError, ExactDivisionError, ValidationError) as exc:
        log.error(f"Command failed: {args.command}: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    finally:
        commands_total.labels(command=args.command, status=status).inc()
        command_duration_seconds.labels(command=args.command).observe(time.perf_counter() - started)
        write_metrics()
        correlation_id_var.reset(token)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
