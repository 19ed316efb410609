"""
Structured logging subsystem.
JSON records on stderr with a Correlation ID per CLI run; stdout is reserved for reports.
"""
import logging
import sys
from contextvars import ContextVar
from typing import TYPE_CHECKING, Any, Dict, MutableMapping, Tuple

from pythonjsonlogger.json import JsonFormatter

from app.core.config import settings

# bound by app.main for the duration of one CLI run
correlation_id_var: ContextVar[str] = ContextVar("correlation_id", default="N/A")


class CorrelationFilter(logging.Filter):
    """Injects a default Correlation ID into log records to maintain schema consistency."""

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, 'correlation_id'):
            record.correlation_id = correlation_id_var.get()  # type: ignore
        return True


handler = logging.StreamHandler(sys.stderr)
handler.addFilter(CorrelationFilter())
formatter = JsonFormatter(
    '%(asctime)s %(levelname)s %(name)s %(correlation_id)s %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)
handler.setFormatter(formatter)

logger = logging.getLogger("restriction")
logger.setLevel(getattr(logging, settings.LOG_LEVEL))
# Own handler only; never touch the root logger so pytest's caplog keeps working.
if not logger.handlers:
    logger.addHandler(handler)


if TYPE_CHECKING:
    _LoggerAdapter = logging.LoggerAdapter[logging.Logger]
else:
    # LoggerAdapter is only subscriptable at runtime from Python 3.11
    _LoggerAdapter = logging.LoggerAdapter


class CorrelationLoggerAdapter(_LoggerAdapter):
    """Context-aware logger adapter ensuring Correlation ID propagation across a run."""

    def process(self, msg: Any, kwargs: MutableMapping[str, Any]) -> Tuple[Any, MutableMapping[str, Any]]:
        bound = (self.extra or {}).get("correlation_id", correlation_id_var.get())
        kwargs.setdefault("extra", {}).setdefault("correlation_id", bound)
        return msg, kwargs


def get_logger_with_correlation(correlation_id: str) -> CorrelationLoggerAdapter:
    """Factory for instantiating a run-bound logger instance."""
    return CorrelationLoggerAdapter(logger, {'correlation_id': correlation_id})


def audit_log(action: str, resource: str, details: Dict[str, Any]) -> None:
    """
    Emits an audit record for every mathematical finding or verification outcome.
    Findings are never suppressed: callers log them here and surface them in the exit status.
    """
    logger.warning(
        f"AUDIT | action={action} | resource={resource} | details={details}",
        extra={"correlation_id": details.get("correlation_id", correlation_id_var.get())}
    )
