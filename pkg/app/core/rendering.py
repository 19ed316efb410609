"""
Canonical text rendering and machine-readable writers.

Exact values render as "a/b" (b omitted when 1); exponents additionally in display form "2 + 63/100".
CSV/JSON for exact modules carry integers and fraction strings only; decimals appear solely where a
precision field accompanies them.
"""
import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Annotated, Any, Iterable, List, Mapping, Optional, Sequence

from pydantic import BaseModel, BeforeValidator, PlainSerializer

from app.core.exact import rational


def render(q: Fraction) -> str:
    """Canonical "a/b" form."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_exponent(p: Fraction) -> str:
    """Display form relative to 2, e.g. 263/100 -> "2 + 63/100"."""
    excess = p - 2
    if excess < 0:
        return f"2 - {render(-excess)}"
    return f"2 + {render(excess)}"


def to_decimal(q: Fraction, digits: int = 12) -> str:
    """Decimal string with `digits` significant digits, half-up rounding."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_UP
        value = Decimal(q.numerator) / Decimal(q.denominator)
    return format(value, "f")


def dump_json(payload: Any) -> str:
    """Deterministic JSON: pydantic models are dumped in json mode, keys keep declaration order."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    elif isinstance(payload, list):
        payload = [p.model_dump(mode="json") if isinstance(p, BaseModel) else p for p in payload]
    return json.dumps(payload, indent=2, ensure_ascii=False)


def dump_csv(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> str:
    """CSV with a fixed column order and "\\n" line endings (byte-identical across platforms)."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(row.get(k)) for k in columns})
    return buffer.getvalue()


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return render(value)
    return str(value)


# Exact scalar field for pydantic records: validated through rational() (floats refused),
# serialized as the canonical "a/b" string in JSON mode.
RationalField = Annotated[
    Fraction,
    BeforeValidator(rational),
    PlainSerializer(render, return_type=str, when_used="json"),
]


def _flat(payload: Mapping[str, Any]) -> List[str]:
    return [k for k, v in payload.items() if not isinstance(v, (dict, list))]


def format_output(
    fmt: str,
    text: str,
    payload: Any,
    rows: Optional[Iterable[Mapping[str, Any]]] = None,
    columns: Optional[Sequence[str]] = None,
) -> str:
    """
    Renders one report in the requested format. Without explicit rows, csv falls back to a single
    row holding the scalar fields of the JSON payload.
    """
    if fmt == "json":
        return dump_json(payload) + "\n"
    if fmt == "csv":
        if rows is None:
            record = payload.model_dump(mode="json") if isinstance(payload, BaseModel) else dict(payload)
            columns = columns or _flat(record)
            rows = [record]
        return dump_csv(rows, columns or [])
    return text if text.endswith("\n") else text + "\n"
