"""
Command routing for the batch CLI.

Each domain package declares a CommandRouter in its router.py and registers handlers with the
@router.command decorator; app.main includes every router into one argparse parser, the same way
domain routers are included into a single application.
"""
import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

# (args, kwargs) forwarded verbatim to ArgumentParser.add_argument
Argument = Tuple[Sequence[str], Dict[str, Any]]


def arg(*flags: str, **kwargs: Any) -> Argument:
    return flags, kwargs


@dataclass
class CommandResult:
    """Rendered report plus the outcome class that decides the exit status."""
    output: str
    finding: bool = False


Handler = Callable[[argparse.Namespace], CommandResult]


@dataclass
class Command:
    name: str
    help: str
    handler: Handler
    arguments: List[Argument] = field(default_factory=list)


class CommandRouter:
    """Collects the subcommands of one domain."""

    def __init__(self, tags: Optional[List[str]] = None):
        self.tags = tags or []
        self.commands: List[Command] = []

    def command(self, name: str, help: str, arguments: Optional[List[Argument]] = None) -> Callable[[Handler], Handler]:
        def decorator(fn: Handler) -> Handler:
            self.commands.append(Command(name=name, help=help, handler=fn, arguments=arguments or []))
            return fn
        return decorator


class UsageError(Exception):
    """Raised instead of argparse's SystemExit so the caller controls the exit status."""


class CommandParser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")
