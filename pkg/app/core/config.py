"""
Centralized toolkit configuration backed by environment variables.
Every resource guard and trial constant lives here so runs are reproducible from the environment alone.
"""
from typing import Optional

from pydantic import model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Immutable configuration schema backed by environment variables."""

    APP_NAME: str = "restriction-exponents"
    VERSION: str = "1.0.0"

    LOG_LEVEL: str = "INFO"

    # Interval arithmetic (asymptotics)
    DEFAULT_PRECISION_BITS: int = 64
    MAX_PRECISION_BITS: int = 4096

    # Symbolic verification: polynomial degrees grow linearly in m.
    SYMBOLIC_MAX_M: int = 12
    SYMBOLIC_DEGREE_CAP: int = 256

    # Exact optimizer sweep
    ASYMPTOTIC_N_CAP: int = 100_000

    # Wolff lab (desk scale)
    LATTICE_POINT_CAP: int = 10_000_000
    TRIAL_MAX_DIMENSION: int = 6
    TRIAL_MAX_SCALE: float = 1_000_000.0
    TRIAL_MAX_BUDGET: int = 1_000_000
    WOLFF_CONSTANT: float = 10.0
    WOLFF_EPSILON: float = 0.1
    OCCUPANCY_RELATIVE_GUARD: float = 1e-9
    SUITE_WORKERS: int = 1

    # Prometheus textfile collector target. Unset disables the dump.
    METRICS_TEXTFILE: Optional[str] = None

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True)

    @model_validator(mode="after")
    def _enforce_consistent_limits(self):
        """Fail-fast: refuse inconsistent guards instead of clamping them later."""
        if self.DEFAULT_PRECISION_BITS > self.MAX_PRECISION_BITS:
            raise ValueError(
                "DEFAULT_PRECISION_BITS exceeds MAX_PRECISION_BITS; "
                "raise the cap or lower the default."
            )
        if self.SYMBOLIC_MAX_M < 1:
            raise ValueError("SYMBOLIC_MAX_M must be at least 1.")
        if self.SUITE_WORKERS < 1:
            raise ValueError("SUITE_WORKERS must be at least 1.")
        return self


settings = Settings()
