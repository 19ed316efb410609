"""
Pydantic schemas for the asymptotic constants and the convergence sweep.
Irrational constants are reported as enclosures only: dyadic endpoints plus a decimal display.
"""
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.asymptotics.interval import Interval
from app.core.rendering import RationalField, render


class HighPrecisionReal(BaseModel):
    """Enclosure [lower, upper] of a real number."""
    precision: int = Field(..., ge=1, description="Rounding grid 2**-precision of the endpoints")
    lower: str
    upper: str
    decimal: str = Field(..., description="Midpoint, for display only")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_interval(cls, interval: Interval, digits: int = 12) -> "HighPrecisionReal":
        return cls(
            precision=interval.bits,
            lower=render(interval.lower),
            upper=render(interval.upper),
            decimal=interval.to_decimal(digits),
        )


class CubicCertificate(BaseModel):
    """Uniqueness of the real root of 2x^3 + 3x^2 - 2."""
    f_at_0: RationalField
    f_at_1: RationalField
    derivative_positive_on_unit_interval: bool = Field(..., description="f'(x) = 6x^2 + 6x > 0 on (0, 1]")
    value_at_other_critical_point: RationalField = Field(..., description="f(-1), the local maximum")
    residual_straddles_zero: bool = Field(..., description="f(lower) < 0 < f(upper) on the final enclosure")
    bisection_steps: int
    newton_steps: int

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def unique(self) -> bool:
        return (
            self.f_at_0 < 0 < self.f_at_1
            and self.derivative_positive_on_unit_interval
            and self.value_at_other_critical_point < 0
            and self.residual_straddles_zero
        )


class LambdaComparison(BaseModel):
    """Computed lambda against one earlier asymptotic coefficient."""
    label: str
    annotation: str
    value: Optional[RationalField] = None
    below: Optional[bool] = Field(
        ..., description="lambda certifiably below the entry; None when the published digits cannot decide"
    )

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class CubicReport(BaseModel):
    root: HighPrecisionReal
    cardano: HighPrecisionReal
    agree: bool = Field(..., description="Bisection/Newton and Cardano enclosures intersect")
    certificate: CubicCertificate
    nu: HighPrecisionReal
    lam: HighPrecisionReal = Field(..., description="lambda = 4 / (2 - nu)")
    lambda_consistent: bool = Field(..., description="6 / (2 + nu^(3/2)) intersects 4 / (2 - nu)")
    registry: List[LambdaComparison]

    model_config = ConfigDict(frozen=True)


class FitRow(BaseModel):
    """One checkpoint of n (p_lin(n) - 2) -> lambda."""
    n: int = Field(..., ge=3)
    k_opt: int
    gap: RationalField = Field(..., description="n (p_lin(n) - 2), exact")
    deviation: HighPrecisionReal = Field(..., description="|gap - lambda|")
    k_deviation: HighPrecisionReal = Field(..., description="|k_opt/n - nu|")
    tomas_gap: RationalField = Field(..., description="4n/(n-1), the Tomas control sequence")
    precision: int

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def csv_record(self) -> dict:
        return {
            "n": self.n,
            "k_opt": self.k_opt,
            "gap_num": self.gap.numerator,
            "gap_den": self.gap.denominator,
            "deviation_decimal_string": self.deviation.decimal,
            "precision": self.precision,
        }


FIT_COLUMNS = ["n", "k_opt", "gap_num", "gap_den", "deviation_decimal_string", "precision"]


class ExponentBounds(BaseModel):
    """Square-root enclosure 2 + 6/(2(n-1) + (k-1) sqrt(k/n)) <= p_n(k) <= 2 + 6/(2(n-1) + (k-1) k/n sqrt((2n+1)/(2k+1)))."""
    n: int
    k: int
    p: RationalField
    lower: HighPrecisionReal
    upper: HighPrecisionReal
    certified: Optional[bool] = Field(
        ..., description="Both inequalities decided at this precision; None when an enclosure straddles p"
    )

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class FitSummary(BaseModel):
    rows: List[FitRow]
    lam: HighPrecisionReal
    nu: HighPrecisionReal
    registry: List[LambdaComparison]

    model_config = ConfigDict(frozen=True)
