"""
Pydantic schemas for k-broad exponents.
"""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.rendering import RationalField, render_exponent


class BoundsCertificate(BaseModel):
    """Squared product bounds k^2(2n+1)/((2k+1)n^2) <= prod^2 <= k/n."""
    lower_ok: bool = Field(..., description="Telescoped lower bound holds")
    upper_ok: bool = Field(..., description="Telescoped upper bound holds")

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


class BroadExponent(BaseModel):
    """Exponent p_n(k) of the k-broad estimate, with both closed forms of its product factor."""
    n: int = Field(..., ge=2, description="Dimension")
    k: int = Field(..., ge=2, description="Broadness parameter")
    product: RationalField = Field(..., description="prod_{i=k}^{n-1} 2i/(2i+1)")
    product_factorial: RationalField = Field(..., description="Factorial closed form of the same product")
    p: RationalField = Field(..., description="2 + 6/(2(n-1) + (k-1) product)")
    closed_forms_agree: bool
    bounds_certificate: Optional[BoundsCertificate] = Field(
        None, description="Absent at k = n, where the product bounds have no content"
    )
    boundary: bool = Field(..., description="k = n, admitted by the reference loop but outside 2 <= k <= n-1")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_invariants(self):
        if self.k > self.n:
            raise ValueError("k must not exceed n")
        if not (0 < self.product <= 1):
            raise ValueError("product must lie in (0, 1]")
        if (self.product == 1) != (self.k >= self.n):
            raise ValueError("product equals 1 exactly for the empty product")
        if self.p <= 2:
            raise ValueError("broad exponent must exceed 2")
        return self

    @property
    def display(self) -> str:
        return render_exponent(self.p)
