"""
Reference registries for the exponent tables.

PRIOR_REGISTRY holds the low-dimensional exponents obtained by other methods (registry data only).
PUBLISHED_EXPONENTS holds the highlighted exponents the optimizer is expected to reproduce exactly.
ASYMPTOTIC_REGISTRY holds the lambda coefficients of p > 2 + lambda/n + O(n^-2) for earlier methods.
"""
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.rendering import RationalField


class PriorEntry(BaseModel):
    n: int = Field(..., ge=2)
    exponent: RationalField
    attribution: str

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class PriorRegistry(BaseModel):
    """Mapping n -> (exponent, attribution label)."""
    entries: Dict[int, PriorEntry]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @classmethod
    def from_rows(cls, rows: List[tuple]) -> "PriorRegistry":
        return cls(entries={n: PriorEntry(n=n, exponent=p, attribution=label) for n, p, label in rows})

    def get(self, n: int) -> Optional[PriorEntry]:
        return self.entries.get(n)

    def dimensions(self) -> List[int]:
        return sorted(self.entries)


PRIOR_REGISTRY = PriorRegistry.from_rows([
    (2, Fraction(4), "Fefferman-Stein"),
    (3, 3 + Fraction(3, 13), "Wang"),
    (4, 2 + Fraction(1407, 1759), "Hickman-Rogers"),
    (6, 2 + Fraction(1, 2), "Guth"),
    (8, 2 + Fraction(4, 11), "Guth"),
    (10, 2 + Fraction(2, 7), "Guth"),
    (12, 2 + Fraction(4, 17), "Guth"),
])

PUBLISHED_EXPONENTS: Dict[int, Fraction] = {
    5: 2 + Fraction(63, 100),
    7: 2 + Fraction(429, 1018),
    9: 2 + Fraction(7293, 23032),
    11: 2 + Fraction(12597, 49670),
    13: 2 + Fraction(185725, 878068),
    14: 2 + Fraction(1671525, 8414731),
    15: 2 + Fraction(2, 11),
    16: 2 + Fraction(20036013, 116580449),
    17: 2 + Fraction(4, 25),
    18: 2 + Fraction(123751845, 817128103),
    19: 2 + Fraction(1, 7),
}


class AsymptoticEntry(BaseModel):
    label: str
    value: Optional[RationalField] = Field(None, description="Exact lambda when it is rational")
    annotation: str = Field(..., description="Decimal display as published")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


ASYMPTOTIC_REGISTRY: List[AsymptoticEntry] = [
    AsymptoticEntry(label="Tomas", value=Fraction(4), annotation="4"),
    AsymptoticEntry(label="Bourgain-Guth", value=Fraction(3), annotation="3"),
    AsymptoticEntry(label="Guth", value=Fraction(8, 3), annotation="8/3"),
    AsymptoticEntry(label="Hickman-Rogers", value=None, annotation="2.604..."),
    AsymptoticEntry(label="nested polynomial Wolff", value=None, annotation="2.596..."),
]
