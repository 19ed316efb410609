"""
Pydantic schemas for linear restriction exponents.
"""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.rendering import RationalField, render_exponent


class CandidateRow(BaseModel):
    """One k of the optimization: max(p_broad, p_limit) is the exponent k delivers."""
    k: int = Field(..., ge=2)
    p_broad: RationalField
    p_limit: RationalField
    p_max: RationalField

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class LinearResult(BaseModel):
    """Optimal linear exponent for dimension n."""
    n: int = Field(..., ge=3)
    k_opt: int = Field(..., ge=2)
    p: RationalField
    p_broad_at_k: RationalField
    p_limit_at_k: RationalField
    upper_ok: bool = Field(..., description="p <= 2 + 2/(k_opt - 2); vacuous at k_opt = 2")
    tie: bool = Field(..., description="Another k attains the same minimum")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_invariants(self):
        if self.k_opt > self.n:
            raise ValueError("k_opt must not exceed n")
        if self.p != max(self.p_broad_at_k, self.p_limit_at_k):
            raise ValueError("p must equal max(p_broad, p_limit) at k_opt")
        return self

    @property
    def display(self) -> str:
        return render_exponent(self.p)


class TableRow(BaseModel):
    n: int
    new_p: RationalField
    prior_p: Optional[RationalField] = None
    attribution: Optional[str] = None
    winner: str = Field(..., pattern="^(new|prior)$")
    k_opt: int
    upper_ok: bool
    published_match: Optional[bool] = Field(
        None, description="Agreement with the published highlighted exponent, when one exists"
    )

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def csv_record(self) -> dict:
        return {
            "n": self.n,
            "new_num": self.new_p.numerator,
            "new_den": self.new_p.denominator,
            "prior_num": self.prior_p.numerator if self.prior_p is not None else None,
            "prior_den": self.prior_p.denominator if self.prior_p is not None else None,
            "winner": self.winner,
            "k_opt": self.k_opt,
            "upper_ok": self.upper_ok,
        }


TABLE_COLUMNS = ["n", "new_num", "new_den", "prior_num", "prior_den", "winner", "k_opt", "upper_ok"]
