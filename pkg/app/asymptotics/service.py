"""
Asymptotic constants of the linear exponent.

nu^(1/2) is the real root of 2x^3 + 3x^2 - 2, lambda = 4/(2 - nu), and n (p_lin(n) - 2) -> lambda.
The root is irrational, so it is only ever reported as an interval enclosure.
"""
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from app.asymptotics.interval import Interval, check_precision
from app.asymptotics.schemas import (
    CubicCertificate,
    CubicReport,
    ExponentBounds,
    FitRow,
    HighPrecisionReal,
    LambdaComparison,
)
from app.broad.service import p_broad
from app.core.config import settings
from app.core.exact import Polynomial
from app.core.exceptions import DomainError, ResourceGuardError
from app.core.logger import logger
from app.linear.registry import ASYMPTOTIC_REGISTRY, AsymptoticEntry
from app.linear.service import linear_exponent

CUBIC = Polynomial((-2, 0, 3, 2))  # 2x^3 + 3x^2 - 2
CUBIC_DERIVATIVE = Polynomial((0, 6, 6))

# extra bits carried through composite interval expressions
GUARD_BITS = 16
NEWTON_HANDOFF_BITS = 8


def _newton_step(x: Interval, bits: int) -> Optional[Interval]:
    m = x.midpoint
    slope = Interval(CUBIC_DERIVATIVE(x.lower), CUBIC_DERIVATIVE(x.upper), bits)
    if not slope.excludes_zero():
        return None
    candidate = Interval.point(m, bits) - Interval.point(CUBIC(m), bits) / slope
    if not candidate.intersects(x):
        return None
    return x.intersection(candidate)


def _bisect(lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    mid = (lo + hi) / 2
    value = CUBIC(mid)
    if value == 0:
        return mid, mid
    return (lo, mid) if value > 0 else (mid, hi)


def solve_cubic_certified(precision: Optional[int] = None) -> Tuple[Interval, CubicCertificate]:
    """
    Bisection down to a coarse bracket, then interval Newton until the width is at most
    2**-precision. f is increasing on the bracket, so the sign at the midpoint picks the half.
    """
    bits = check_precision(precision or settings.DEFAULT_PRECISION_BITS)
    target = Fraction(1, 1 << bits)
    lo, hi = Fraction(0), Fraction(1)
    bisections = newtons = 0
    while hi - lo > Fraction(1, 1 << NEWTON_HANDOFF_BITS):
        lo, hi = _bisect(lo, hi)
        bisections += 1

    work = bits + NEWTON_HANDOFF_BITS
    x = Interval(lo, hi, work)
    while x.width > target:
        refined = _newton_step(x, work)
        if refined is None or refined.width * 2 > x.width:
            # no contraction: fall back to one exact bisection step
            lo, hi = _bisect(x.lower, x.upper)
            refined = Interval(lo, hi, work)
            bisections += 1
        else:
            newtons += 1
        x = refined

    # 6x^2 + 6x has non-negative coefficients and a zero constant term, so it is positive on (0, 1]
    derivative_positive = CUBIC_DERIVATIVE.coeffs[0] == 0 and all(c >= 0 for c in CUBIC_DERIVATIVE.coeffs[1:])
    certificate = CubicCertificate(
        f_at_0=CUBIC(0),
        f_at_1=CUBIC(1),
        derivative_positive_on_unit_interval=derivative_positive,
        value_at_other_critical_point=CUBIC(-1),
        residual_straddles_zero=CUBIC(x.lower) <= 0 <= CUBIC(x.upper),
        bisection_steps=bisections,
        newton_steps=newtons,
    )
    return x, certificate


def solve_cubic(precision: Optional[int] = None) -> Interval:
    """Enclosure of the unique real root of 2x^3 + 3x^2 - 2, of width at most 2**-precision."""
    return solve_cubic_certified(precision)[0]


def cardano_root(precision: Optional[int] = None) -> Interval:
    """(3/8 + 8^(-1/2))^(1/3) + (3/8 - 8^(-1/2))^(1/3) - 1/2, evaluated in interval arithmetic."""
    bits = check_precision(precision or settings.DEFAULT_PRECISION_BITS) + GUARD_BITS
    inverse_root8 = 1 / Interval.point(8, bits).sqrt()
    three_eighths = Interval.point(Fraction(3, 8), bits)
    return (three_eighths + inverse_root8).cbrt() + (three_eighths - inverse_root8).cbrt() - Fraction(1, 2)


def nu_lambda(precision: Optional[int] = None) -> Tuple[Interval, Interval, bool]:
    """(nu, lambda, consistent) where consistent means 6/(2 + nu^(3/2)) meets 4/(2 - nu)."""
    bits = check_precision(precision or settings.DEFAULT_PRECISION_BITS)
    root = solve_cubic(min(bits + GUARD_BITS, settings.MAX_PRECISION_BITS))
    nu = root ** 2
    lam = 4 / (2 - nu)
    # root = nu^(1/2) > 0, so nu^(3/2) = nu * root
    alternative = 6 / (2 + nu * root)
    return nu, lam, lam.intersects(alternative)


def cubic_report(precision: Optional[int] = None) -> CubicReport:
    bits = check_precision(precision or settings.DEFAULT_PRECISION_BITS)
    root, certificate = solve_cubic_certified(bits)
    cardano = cardano_root(bits)
    nu, lam, consistent = nu_lambda(bits)
    agree = root.intersects(cardano)
    logger.info(f"Cubic constants enclosed: precision={bits}, agree={agree}, lambda_consistent={consistent}")
    return CubicReport(
        root=HighPrecisionReal.from_interval(root),
        cardano=HighPrecisionReal.from_interval(cardano),
        agree=agree,
        certificate=certificate,
        nu=HighPrecisionReal.from_interval(nu),
        lam=HighPrecisionReal.from_interval(lam),
        lambda_consistent=consistent,
        registry=compare_with_registry(lam),
    )


def _published_range(entry: AsymptoticEntry) -> Tuple[Fraction, Fraction]:
    """[lo, hi) of an entry; truncated decimals such as "2.604..." cover one unit of the last digit."""
    if entry.value is not None:
        return entry.value, entry.value
    digits = entry.annotation.rstrip(".")
    decimals = len(digits.partition(".")[2])
    lo = Fraction(digits)
    return lo, lo + Fraction(1, 10 ** decimals)


def compare_with_registry(lam: Interval) -> List[LambdaComparison]:
    comparisons = []
    for entry in ASYMPTOTIC_REGISTRY:
        lo, hi = _published_range(entry)
        below: Optional[bool] = None
        if lam.upper < lo:
            below = True
        elif lam.lower >= hi:
            below = False
        comparisons.append(LambdaComparison(
            label=entry.label, annotation=entry.annotation, value=entry.value, below=below
        ))
    return comparisons


def tomas_gap(n: int) -> Fraction:
    """n (2(n+1)/(n-1) - 2) = 4n/(n-1)."""
    if n < 2:
        raise DomainError(f"Tomas exponent requires n >= 2, got n={n}")
    return n * (Fraction(2 * (n + 1), n - 1) - 2)


def default_checkpoints(n_lo: int, n_hi: int) -> List[int]:
    """n_lo, n_hi and every 1-2-5 decade value strictly between them."""
    points = {n_lo, n_hi}
    decade = 1
    while decade <= n_hi:
        for step in (1, 2, 5):
            value = step * decade
            if n_lo < value < n_hi:
                points.add(value)
        decade *= 10
    return sorted(points)


def _check_fit_range(ns: Iterable[int]) -> None:
    cap = settings.ASYMPTOTIC_N_CAP
    for n in ns:
        if n > cap:
            raise ResourceGuardError(f"n={n} exceeds ASYMPTOTIC_N_CAP={cap}")
        if n < 3:
            raise DomainError(f"asymptotic fit requires n >= 3, got n={n}")


def asymptotic_fit(
    n_lo: int,
    n_hi: int,
    ns: Optional[Iterable[int]] = None,
    precision: Optional[int] = None,
) -> List[FitRow]:
    """
    gap = n (p_lin(n) - 2) exactly at every checkpoint, with |gap - lambda| and |k_opt/n - nu|
    as enclosures. The exact gap is rounded onto the dyadic grid before any interval work.
    """
    if n_lo > n_hi:
        raise DomainError(f"require n_lo <= n_hi, got {n_lo}..{n_hi}")
    _check_fit_range((n_lo, n_hi))
    checkpoints = sorted(set(ns)) if ns is not None else default_checkpoints(n_lo, n_hi)
    _check_fit_range(checkpoints)

    bits = check_precision(precision or settings.DEFAULT_PRECISION_BITS)
    nu, lam, _ = nu_lambda(bits)
    rows: List[FitRow] = []
    for n in checkpoints:
        result = linear_exponent(n)
        gap = n * (result.p - 2)
        deviation = (Interval(gap, gap, bits) - lam).abs()
        k_deviation = (Interval(Fraction(result.k_opt, n), Fraction(result.k_opt, n), bits) - nu).abs()
        rows.append(FitRow(
            n=n,
            k_opt=result.k_opt,
            gap=gap,
            deviation=HighPrecisionReal.from_interval(deviation),
            k_deviation=HighPrecisionReal.from_interval(k_deviation),
            tomas_gap=tomas_gap(n),
            precision=bits,
        ))
        logger.info(f"Asymptotic checkpoint: n={n}, k_opt={result.k_opt}, deviation={deviation.to_decimal(6)}")
    return rows


def deviation_non_increasing(rows: List[FitRow]) -> bool:
    """Deviation enclosures ordered by n never certifiably increase."""
    uppers = [Fraction(r.deviation.upper) for r in rows]
    lowers = [Fraction(r.deviation.lower) for r in rows]
    return all(lowers[i + 1] <= uppers[i] for i in range(len(rows) - 1))


def exponent_bounds(n: int, k: int, precision: Optional[int] = None) -> ExponentBounds:
    """Encloses the square-root bounds on p_n(k) and decides both inequalities against the exact value."""
    if not (2 <= k <= n - 1):
        raise DomainError(f"bounds require 2 <= k <= n-1, got n={n}, k={k}")
    bits = check_precision(precision or settings.DEFAULT_PRECISION_BITS)
    p = p_broad(n, k).p
    base = Interval.point(2 * (n - 1), bits)
    upper_product = Interval.point(Fraction(k, n), bits).sqrt()
    lower_product = Interval.point(Fraction(2 * n + 1, 2 * k + 1), bits).sqrt() * Fraction(k, n)
    lower = 2 + 6 / (base + (k - 1) * upper_product)
    upper = 2 + 6 / (base + (k - 1) * lower_product)

    certified: Optional[bool] = None
    if not (lower.contains(p) or upper.contains(p)):
        certified = lower.upper < p < upper.lower
    return ExponentBounds(
        n=n,
        k=k,
        p=p,
        lower=HighPrecisionReal.from_interval(lower),
        upper=HighPrecisionReal.from_interval(upper),
        certified=certified,
    )
