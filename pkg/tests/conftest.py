"""
Pytest configuration for the restriction-exponent test suite.
Provides seeded generators, a CLI runner and a settings override helper.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np
import pytest

from app.core.config import settings
from app.main import run


@dataclass
class CliResult:
    status: int
    stdout: str
    stderr: str


@pytest.fixture
def rng() -> np.random.Generator:
    """Fixed-seed generator so geometric tests are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def cli(capsys) -> Callable[..., CliResult]:
    """
    Runs the CLI in-process and returns (status, stdout, stderr).
    JSON log records go to stderr, so stdout holds the report only.
    """
    def invoke(*argv: str) -> CliResult:
        status = run(list(argv))
        captured = capsys.readouterr()
        return CliResult(status=status, stdout=captured.out, stderr=captured.err)
    return invoke


@pytest.fixture
def override_settings(monkeypatch):
    """Temporarily replaces settings fields; restored automatically after the test."""
    def apply(**values) -> None:
        for name, value in values.items():
            monkeypatch.setattr(settings, name, value)
    return apply


@pytest.fixture
def small_trial_config() -> dict:
    """A desk-scale Wolff suite that finishes in well under a second."""
    return {"n": 3, "m": 1, "R": 400.0, "seeds": [0, 1, 2], "budget": 500}
