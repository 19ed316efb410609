"""
Exact arithmetic core.

Rational scalars are fractions.Fraction (canonical, den > 0, gcd 1).
Polynomials are dense coefficient tuples over Fraction indexed by degree;
rational functions are reduced Polynomial pairs with a monic denominator.
No floating-point value ever enters this module.
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Callable, Dict, Iterable, List, Tuple, Union

from app.core.exceptions import DomainError, ExactDivisionError, PoleError

Rational = Fraction
Scalar = Union[int, Fraction, str]


class Ordering(str, Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def rational(value: Scalar) -> Fraction:
    """Coerces an int, Fraction or "a/b" string to a canonical Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise DomainError("booleans are not exact scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational: {value!r}") from exc
    raise DomainError(f"not an exact rational: {value!r} ({type(value).__name__})")


def compare(a: Fraction, b: Fraction) -> Ordering:
    """Exact ordering by cross-multiplication (denominators are positive)."""
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


def _div(a: Fraction, b: Fraction) -> Fraction:
    if b == 0:
        raise ExactDivisionError(f"division of {a} by zero", dividend=a, divisor=b)
    return a / b


_RAT_OPS: Dict[str, Callable[[Fraction, Fraction], object]] = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": _div,
    "cmp": compare,
}


def rat_ops(op: str, a: Scalar, b: Scalar) -> Union[Fraction, Ordering]:
    """Applies one of add, sub, mul, div, cmp to two exact rationals."""
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise DomainError(f"unknown rational operation {op!r}") from None
    return fn(rational(a), rational(b))  # type: ignore[return-value]


def to_dyadic(x: Fraction, bits: int, rounding: str = "floor") -> Fraction:
    """Rounds x to a multiple of 2**-bits, toward -inf ("floor") or +inf ("ceil")."""
    scale = 1 << bits
    num = x.numerator * scale
    if rounding == "floor":
        k = num // x.denominator
    elif rounding == "ceil":
        k = -((-num) // x.denominator)
    else:
        raise DomainError(f"unknown rounding mode {rounding!r}")
    return Fraction(k, scale)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable dense univariate polynomial over Fraction, coefficients low degree first."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls((0, 1))

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Polynomial.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = _as_poly(other)
        size = max(len(self._coeffs), len(other._coeffs))
        a = self._coeffs + (Fraction(0),) * (size - len(self._coeffs))
        b = other._coeffs + (Fraction(0),) * (size - len(other._coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = rational(c)
        return Polynomial(c * x for x in self._coeffs)

    def __divmod__(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ExactDivisionError("polynomial division by zero", dividend=self, divisor=other)
        rem = list(self._coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for shift in range(len(rem) - 1 - dq, -1, -1):
            coef = rem[shift + dq] / lead
            if coef == 0:
                continue
            quot[shift] = coef
            for i, b in enumerate(other._coeffs):
                rem[shift + i] -= coef * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def __call__(self, x: Scalar) -> Fraction:
        x = rational(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def render(self, var: str = "n") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if power == 0:
                body = str(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.render()})"


def _as_poly(value: Union[Polynomial, Scalar]) -> Polynomial:
    return value if isinstance(value, Polynomial) else Polynomial.constant(value)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the exact Euclidean algorithm; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

_ONE = Polynomial.constant(1)


class RationalFunction:
    """Immutable reduced quotient num/den of polynomials, den monic, zero stored as 0/1."""

    __slots__ = ("_num", "_den")

    def __init__(self, num: Union[Polynomial, Scalar], den: Union[Polynomial, Scalar] = 1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ExactDivisionError("rational function with zero denominator", dividend=num, divisor=den)
        if num.is_zero():
            num, den = Polynomial(), _ONE
        else:
            if den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lead = den.leading
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> "RationalFunction":
        return cls(Polynomial.constant(c))

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(Polynomial.variable())

    @property
    def num(self) -> Polynomial:
        return self._num

    @property
    def den(self) -> Polynomial:
        return self._den

    @property
    def degree(self) -> int:
        """Largest of numerator and denominator degree."""
        return max(self._num.degree, self._den.degree)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.constant(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self._num, self._den)

    def __add__(self, other: Union["RationalFunction", Scalar]) -> "RationalFunction":
        other = _as_rf(other)
        if self._den == other._den:
            return RationalFunction(self._num + other._num, self._den)
        return RationalFunction(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __sub__(self, other: Union["RationalFunction", Scalar]) -> "RationalFunction":
        return self + (-_as_rf(other))

    def __rsub__(self, other: Scalar) -> "RationalFunction":
        return _as_rf(other) - self

    def __mul__(self, other: Union["RationalFunction", Scalar]) -> "RationalFunction":
        other = _as_rf(other)
        return RationalFunction(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["RationalFunction", Scalar]) -> "RationalFunction":
        other = _as_rf(other)
        if other.is_zero():
            raise ExactDivisionError("division by the zero function", dividend=self, divisor=other)
        return RationalFunction(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other: Scalar) -> "RationalFunction":
        return _as_rf(other) / self

    def render(self, var: str = "n") -> str:
        if self._den == _ONE:
            return self._num.render(var)
        return f"({self._num.render(var)})/({self._den.render(var)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self.render()})"


def _as_rf(value: Union[RationalFunction, Polynomial, Scalar]) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction(_as_poly(value))


_RF_OPS: Dict[str, Callable[[RationalFunction, RationalFunction], RationalFunction]] = {
    "add": lambda f, g: f + g,
    "sub": lambda f, g: f - g,
    "mul": lambda f, g: f * g,
    "div": lambda f, g: f / g,
}


def rf_ops(op: str, f: RationalFunction, g: RationalFunction) -> RationalFunction:
    """Applies one of add, sub, mul, div in the rational-function field."""
    try:
        fn = _RF_OPS[op]
    except KeyError:
        raise DomainError(f"unknown rational-function operation {op!r}") from None
    return fn(_as_rf(f), _as_rf(g))


def rf_eval(f: RationalFunction, x: Scalar) -> Fraction:
    """Exact substitution; a vanishing denominator raises PoleError."""
    x = rational(x)
    den = f.den(x)
    if den == 0:
        raise PoleError(f.den.render(), x)
    return f.num(x) / den


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------

def derivative(p: Polynomial) -> Polynomial:
    return Polynomial(i * c for i, c in enumerate(p.coeffs) if i > 0)


def sturm_sequence(p: Polynomial) -> List[Polynomial]:
    """p, p', then negated remainders until the remainder vanishes."""
    seq = [p, derivative(p)]
    while not seq[-1].is_zero():
        rem = seq[-2] % seq[-1]
        if rem.is_zero():
            break
        seq.append(-rem)
    return [q for q in seq if not q.is_zero()]


def _sign_changes(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_roots_above(p: Polynomial, a: Scalar) -> int:
    """Number of distinct real roots of p in (a, +inf), by Sturm's theorem."""
    if p.is_zero():
        raise DomainError("the zero polynomial has no finite root count")
    a = rational(a)
    linear = Polynomial((-a, 1))
    while p.degree > 0 and p(a) == 0:
        p = p // linear
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)
    at_a = _sign_changes(q(a) for q in seq)
    # sign at +inf is the sign of the leading coefficient
    at_inf = _sign_changes(q.leading for q in seq)
    return at_a - at_inf
