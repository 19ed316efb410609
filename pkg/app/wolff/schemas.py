"""
Pydantic schemas for Wolff lab configs and reports.
"""
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings

FLAG_MODEL = "affine-flag surrogate (line form; nested tube hypothesis not modelled)"
# bound, ratio and occupancies are IEEE doubles
FLOAT_FORMAT = "float64"


class TrialConfig(BaseModel):
    """Trial suite read from JSON: {n, m, R, r[], rho[], seeds[], C, eps, budget}."""
    n: int = Field(..., ge=2, description="Ambient dimension")
    m: int = Field(..., ge=0, description="Flag length; V_j has codimension j")
    R: float = Field(..., ge=4, description="Global scale")
    r: List[float] = Field(default_factory=list, description="Ball radii; random when empty")
    rho: List[float] = Field(default_factory=list, description="Neighbourhood widths; random when empty")
    seeds: List[int] = Field(default_factory=lambda: [0])
    C: float = Field(default_factory=lambda: settings.WOLFF_CONSTANT, gt=0)
    eps: float = Field(default_factory=lambda: settings.WOLFF_EPSILON, ge=0)
    budget: int = Field(10_000, ge=1, description="Maximum number of lines per trial")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_shape(self):
        if self.m > self.n - 1:
            raise ValueError("m must not exceed n - 1")
        if len(self.r) != len(self.rho):
            raise ValueError("r and rho must be given together")
        if self.r and len(self.r) != self.m:
            raise ValueError("r and rho need one entry per flag level")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        return self


class TrialReport(BaseModel):
    seed: int
    n: int
    m: int
    R: float
    lines: int = Field(..., description="Lines in the sampled direction-separated family")
    count: int = Field(..., ge=0, description="Lines meeting every occupancy condition")
    bound: float
    ratio: float
    violated: bool
    r: List[float]
    rho: List[float]
    C: float
    eps: float
    flag_model: str = FLAG_MODEL
    float_format: str = FLOAT_FORMAT
    relative_guard: float = Field(
        default_factory=lambda: settings.OCCUPANCY_RELATIVE_GUARD,
        description="Occupancy must reach (1 - guard) r_j to count",
    )

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _violation_matches_count(self):
        if self.violated != (self.count > self.bound):
            raise ValueError("violated must equal count > bound")
        return self


class ExtremalReport(BaseModel):
    """Lines concentrated near one codimension-j subspace, against the C = 1, eps = 0 bound."""
    n: int
    j: int
    R: float
    count: int
    satisfying: int = Field(..., description="Members with full occupancy at every level of the emulating chain")
    bound: float
    ratio: float
    min_separation: Optional[float] = None
    float_format: str = FLOAT_FORMAT
    relative_guard: float = Field(default_factory=lambda: settings.OCCUPANCY_RELATIVE_GUARD)

    model_config = ConfigDict(frozen=True)


class SuiteSummary(BaseModel):
    """Outcome of one trial suite. A suite whose counts are all 0 never tested the bound."""
    n: int
    m: int
    R: float
    seeds: int
    violations: int
    nonzero_counts: int
    max_ratio: float
    float_format: str = FLOAT_FORMAT

    model_config = ConfigDict(frozen=True)

    @property
    def exercised(self) -> bool:
        return self.nonzero_counts > 0
