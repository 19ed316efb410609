"""
Pydantic schemas for the multigrain parameter verifier.
Residuals and exponents are carried as exact strings ("a/b", or a rendered rational function of n).
"""
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class BetaConvention(str, Enum):
    """Direction of the beta/alpha ratios."""
    PRINTED = "printed"        # (1/2 - 1/p_i) / (1/2 - 1/p_0)
    RECIPROCAL = "reciprocal"  # (1/2 - 1/p_0) / (1/2 - 1/p_i)


class ConventionOutcome(BaseModel):
    convention: BetaConvention
    residuals: Dict[str, str] = Field(..., description="X_1..X_m, Y_1..Y_{m+1} as exact strings")
    all_zero: bool
    beta: List[str]
    beta_in_unit_interval: Optional[bool] = Field(
        None, description="0 <= beta_i <= 1 for every i; not decidable for symbolic parameters"
    )

    model_config = ConfigDict(frozen=True)


class VerificationReport(BaseModel):
    """Outcome of the parameter pipeline at a fixed (n, m)."""
    n: int = Field(..., ge=2)
    m: int = Field(..., ge=0)
    convention: Optional[BetaConvention] = Field(
        ..., description="Convention under which every residual vanishes; None when neither does"
    )
    residuals: Dict[str, str]
    all_zero: bool
    p0: str
    p0_closed_form_match: bool
    gamma_invariants: bool = Field(..., description="sum gamma_j = 1 and 0 <= gamma_j <= 1")
    defining_equation_ok: bool = Field(..., description="(1/2 - 1/p_m)^-1 = 2(n - m)")
    cross_module_match: bool = Field(..., description="p_0 equals the broad exponent at k = n - m")
    exponents_increasing: bool = Field(..., description="p_0 < p_1 < ... < p_m")
    conventions: List[ConventionOutcome]
    notes: List[str]

    model_config = ConfigDict(frozen=True)

    @property
    def finding(self) -> bool:
        return not (
            self.all_zero
            and self.p0_closed_form_match
            and self.gamma_invariants
            and self.defining_equation_ok
            and self.cross_module_match
        )


class SymbolicReport(BaseModel):
    """Outcome of the parameter pipeline over rational functions of n at a fixed m."""
    m: int = Field(..., ge=1)
    convention: Optional[BetaConvention]
    residuals: Dict[str, str]
    all_zero: bool
    p0: str
    p0_closed_form_match: bool
    gamma_sum_ok: bool
    gamma: List[str]
    conventions: List[ConventionOutcome]
    validity_domain: str
    denominators_checked: int
    roots_in_domain: int = Field(..., ge=0, description="Real denominator roots inside the validity domain")
    poles_at_or_below: List[int] = Field(..., description="Integers 0..m+1 where some denominator vanishes")
    max_degree: int
    notes: List[str]

    model_config = ConfigDict(frozen=True)

    @property
    def finding(self) -> bool:
        return not (self.all_zero and self.p0_closed_form_match and self.gamma_sum_ok and self.roots_in_domain == 0)


class CoherenceReport(BaseModel):
    """rf_eval of every symbolic quantity against the numeric pipeline."""
    n: int
    m: int
    quantities_checked: int
    mismatches: List[str]

    model_config = ConfigDict(frozen=True)

    @property
    def coherent(self) -> bool:
        return not self.mismatches


class SweepReport(BaseModel):
    n_max: int
    pairs_checked: int
    failures: List[Tuple[int, int]] = Field(default_factory=list, description="(n, m) pairs with any failed check")

    model_config = ConfigDict(frozen=True)

    @property
    def ok(self) -> bool:
        return not self.failures
