"""
Outward-rounded interval arithmetic on exact dyadic rationals.

An Interval [lower, upper] encloses a real number; every operation returns an interval that
encloses every possible result, with endpoints rounded outward to multiples of 2**-bits.
No floating-point value is used anywhere.
"""
import math
from fractions import Fraction
from typing import Tuple, Union

from app.core.config import settings
from app.core.exact import Scalar, rational, to_dyadic
from app.core.exceptions import DomainError, ResourceGuardError
from app.core.rendering import to_decimal

Operand = Union["Interval", int, Fraction, str]


def check_precision(bits: int) -> int:
    if bits < 1:
        raise DomainError(f"precision must be at least 1 bit, got {bits}")
    if bits > settings.MAX_PRECISION_BITS:
        raise ResourceGuardError(f"precision {bits} exceeds MAX_PRECISION_BITS={settings.MAX_PRECISION_BITS}")
    return bits


def _icbrt(n: int) -> int:
    """floor(n ** (1/3)) for n >= 0, by integer Newton iteration from above."""
    if n < 0:
        raise DomainError("integer cube root of a negative number")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x ** 3 > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def _sqrt_bound(x: Fraction, bits: int, upward: bool) -> Fraction:
    scale = 1 << bits
    scaled = x * scale * scale
    if upward:
        target = math.ceil(scaled)
        s = math.isqrt(target)
        if s * s < target:
            s += 1
    else:
        s = math.isqrt(math.floor(scaled))
    return Fraction(s, scale)


def _cbrt_bound(x: Fraction, bits: int, upward: bool) -> Fraction:
    # odd function: a bound for a negative argument mirrors the opposite bound of -x
    if x < 0:
        return -_cbrt_bound(-x, bits, not upward)
    scale = 1 << bits
    scaled = x * scale ** 3
    if upward:
        target = math.ceil(scaled)
        s = _icbrt(target)
        if s ** 3 < target:
            s += 1
    else:
        s = _icbrt(math.floor(scaled))
    return Fraction(s, scale)


class Interval:
    """Closed interval with exact endpoints, rounded outward at `bits` after every operation."""

    __slots__ = ("lower", "upper", "bits")

    def __init__(self, lower: Scalar, upper: Scalar, bits: int = 64):
        lo, hi = rational(lower), rational(upper)
        if lo > hi:
            raise DomainError(f"empty interval [{lo}, {hi}]")
        self.lower = to_dyadic(lo, bits, "floor")
        self.upper = to_dyadic(hi, bits, "ceil")
        self.bits = bits

    @classmethod
    def point(cls, x: Scalar, bits: int = 64) -> "Interval":
        return cls(x, x, bits)

    def _coerce(self, other: Operand) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval.point(other, self.bits)

    def _bits(self, other: "Interval") -> int:
        return max(self.bits, other.bits)

    def __repr__(self) -> str:
        return f"Interval({to_decimal(self.lower)}, {to_decimal(self.upper)})"

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, x: Union[Scalar, "Interval"]) -> bool:
        if isinstance(x, Interval):
            return self.lower <= x.lower and x.upper <= self.upper
        x = rational(x)
        return self.lower <= x <= self.upper

    def intersects(self, other: "Interval") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def intersection(self, other: "Interval") -> "Interval":
        if not self.intersects(other):
            raise DomainError("intervals are disjoint")
        return Interval(max(self.lower, other.lower), min(self.upper, other.upper), self._bits(other))

    def excludes_zero(self) -> bool:
        return self.lower > 0 or self.upper < 0

    def __neg__(self) -> "Interval":
        return Interval(-self.upper, -self.lower, self.bits)

    def __add__(self, other: Operand) -> "Interval":
        o = self._coerce(other)
        return Interval(self.lower + o.lower, self.upper + o.upper, self._bits(o))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "Interval":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Operand) -> "Interval":
        return self._coerce(other) - self

    def __mul__(self, other: Operand) -> "Interval":
        o = self._coerce(other)
        products = (self.lower * o.lower, self.lower * o.upper, self.upper * o.lower, self.upper * o.upper)
        return Interval(min(products), max(products), self._bits(o))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if not self.excludes_zero():
            raise DomainError(f"divisor interval {self!r} contains 0")
        return Interval(1 / self.upper, 1 / self.lower, self.bits)

    def __truediv__(self, other: Operand) -> "Interval":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other: Operand) -> "Interval":
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k: int) -> "Interval":
        if not isinstance(k, int) or k < 0:
            raise DomainError(f"only non-negative integer powers are supported, got {k!r}")
        if k == 0:
            return Interval.point(1, self.bits)
        lo, hi = self.lower ** k, self.upper ** k
        if k % 2 == 1:
            return Interval(lo, hi, self.bits)
        if self.lower >= 0:
            return Interval(lo, hi, self.bits)
        if self.upper <= 0:
            return Interval(hi, lo, self.bits)
        return Interval(0, max(lo, hi), self.bits)

    def sqrt(self) -> "Interval":
        if self.lower < 0:
            raise DomainError(f"square root of an interval reaching below 0: {self!r}")
        return Interval(
            _sqrt_bound(self.lower, self.bits, upward=False),
            _sqrt_bound(self.upper, self.bits, upward=True),
            self.bits,
        )

    def cbrt(self) -> "Interval":
        """Real cube root; defined for negative endpoints."""
        return Interval(
            _cbrt_bound(self.lower, self.bits, upward=False),
            _cbrt_bound(self.upper, self.bits, upward=True),
            self.bits,
        )

    def abs(self) -> "Interval":
        if self.lower >= 0:
            return self
        if self.upper <= 0:
            return -self
        return Interval(0, max(-self.lower, self.upper), self.bits)

    def to_decimal(self, digits: int = 12) -> str:
        """Midpoint as a decimal string; the enclosure itself is carried by the endpoints."""
        return to_decimal(self.midpoint, digits)

    def endpoints(self) -> Tuple[Fraction, Fraction]:
        return self.lower, self.upper
