"""
Domain exceptions.
DomainError maps to exit status 1 at the CLI boundary; findings are not exceptions.
"""
from typing import Any


class DomainError(ValueError):
    """Precondition violated (dimension, index or parameter outside its admitted range)."""


class ResourceGuardError(DomainError):
    """A configured resource cap would be exceeded."""


class FlagValidationError(DomainError):
    """An affine flag violates nesting or width/radius ordering."""


class ExactDivisionError(ZeroDivisionError):
    """Division by an exact zero (Rational or RationalFunction)."""

    def __init__(self, message: str, dividend: Any = None, divisor: Any = None):
        super().__init__(message)
        self.dividend = dividend
        self.divisor = divisor


class PoleError(ExactDivisionError):
    """Evaluation of a rational function at a zero of its denominator."""

    def __init__(self, denominator: Any, point: Any):
        super().__init__(f"denominator {denominator} vanishes at {point}", divisor=denominator)
        self.denominator = denominator
        self.point = point
