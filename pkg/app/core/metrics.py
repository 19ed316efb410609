"""
Prometheus metrics for batch runs.
A dedicated registry is dumped through the textfile-collector format after each CLI run.
"""
from typing import Optional

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

from app.core.config import settings

registry = CollectorRegistry()

commands_total = Counter(
    "restriction_commands_total",
    "Total CLI commands executed",
    ["command", "status"],
    registry=registry,
)

identity_checks_total = Counter(
    "restriction_identity_checks_total",
    "Parameter-identity verifications performed",
    ["result"],
    registry=registry,
)

falsification_trials_total = Counter(
    "restriction_falsification_trials_total",
    "Wolff falsification trials executed",
    ["violated"],
    registry=registry,
)

command_duration_seconds = Histogram(
    "restriction_command_duration_seconds",
    "Duration of CLI commands",
    ["command"],
    buckets=[0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0],
    registry=registry,
)


def write_metrics(path: Optional[str] = None) -> bool:
    """Writes the registry to the configured textfile. Returns False when no target is configured."""
    target = path or settings.METRICS_TEXTFILE
    if not target:
        return False
    write_to_textfile(target, registry)
    return True
