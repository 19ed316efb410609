"""
k-broad exponent computations.

p_n(k) = 2 + 6 / (2(n-1) + (k-1) prod_{i=k}^{n-1} 2i/(2i+1)), evaluated exactly in both the
product form and the factorial form 4^{n-k} ((n-1)!/(k-1)!)^2 (2k-1)!/(2n-1)!.
The square-root bounds on the product are certified in squared form only.
"""
import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from app.broad.schemas import BoundsCertificate, BroadExponent
from app.core.exceptions import DomainError
from app.core.logger import audit_log, logger


def _check_range(k: int, n: int) -> None:
    if n < 2 or k < 2:
        raise DomainError(f"require n >= 2 and k >= 2, got n={n}, k={k}")
    if k > n:
        raise DomainError(f"require k <= n, got n={n}, k={k}")


@lru_cache(maxsize=None)
def factorial(m: int) -> int:
    """Exact factorial, memoized across calls."""
    return math.factorial(m)


def dyadic_product(k: int, n: int) -> Fraction:
    """prod_{i=k}^{n-1} 2i/(2i+1); the empty product (k = n) is 1."""
    _check_range(k, n)
    num, den = 1, 1
    for i in range(k, n):
        num *= 2 * i
        den *= 2 * i + 1
    return Fraction(num, den)


def dyadic_product_factorial(k: int, n: int) -> Fraction:
    """Factorial closed form 4^{n-k} ((n-1)!/(k-1)!)^2 (2k-1)!/(2n-1)!."""
    _check_range(k, n)
    ratio = factorial(n - 1) // factorial(k - 1)
    return Fraction(4 ** (n - k) * ratio * ratio * factorial(2 * k - 1), factorial(2 * n - 1))


def product_terms(k: int, n: int) -> Tuple[int, int]:
    """
    Unreduced integers (A, B) with A/B = prod_{i=k}^{n-1} 2i/(2i+1).
    Built from falling factorials so that very large n never pays for a gcd.
    """
    _check_range(k, n)
    falling = math.perm(n - 1, n - k)
    return 4 ** (n - k) * falling * falling, math.perm(2 * n - 1, 2 * (n - k))


def broad_value(n: int, k: int, product: Fraction) -> Fraction:
    return 2 + Fraction(6) / (2 * (n - 1) + (k - 1) * product)


def appendix_product_bounds(n: int, k: int) -> Tuple[bool, bool]:
    """
    (lower_ok, upper_ok) for k^2(2n+1)/((2k+1)n^2) <= prod^2 <= k/n.
    Squaring removes the square roots so every comparison stays rational.
    """
    if k < 2 or k > n - 1:
        raise DomainError(f"bounds require 2 <= k <= n-1, got n={n}, k={k}")
    squared = dyadic_product(k, n) ** 2
    lower = Fraction(k * k * (2 * n + 1), (2 * k + 1) * n * n)
    upper = Fraction(k, n)
    return lower <= squared, squared <= upper


def p_broad(n: int, k: int) -> BroadExponent:
    """Broad exponent p_n(k) with both closed forms compared and the bounds certificate attached."""
    _check_range(k, n)
    product = dyadic_product(k, n)
    product_factorial = dyadic_product_factorial(k, n)
    certificate: Optional[BoundsCertificate] = None
    if k <= n - 1:
        lower_ok, upper_ok = appendix_product_bounds(n, k)
        certificate = BoundsCertificate(lower_ok=lower_ok, upper_ok=upper_ok)
    agree = product == product_factorial
    if not agree:
        logger.warning(f"Closed forms disagree at n={n}, k={k}: {product} != {product_factorial}")
    return BroadExponent(
        n=n,
        k=k,
        product=product,
        product_factorial=product_factorial,
        p=broad_value(n, k, product),
        closed_forms_agree=agree,
        bounds_certificate=certificate,
        boundary=(k == n),
    )


def chain_inequality_check(i: int) -> bool:
    """(2i+1)/(2i+3) >= (2i/(2i+1)) (2(i+1)/(2i+3)) >= i/(i+1), exactly."""
    if i < 1:
        raise DomainError(f"chain inequality requires i >= 1, got {i}")
    left = Fraction(2 * i + 1, 2 * i + 3)
    middle = Fraction(2 * i, 2 * i + 1) * Fraction(2 * (i + 1), 2 * i + 3)
    right = Fraction(i, i + 1)
    return left >= middle >= right


def chain_sweep(i_max: int) -> Optional[int]:
    """First i in [1, i_max] where the chain inequality fails, or None."""
    for i in range(1, i_max + 1):
        if not chain_inequality_check(i):
            audit_log(action="chain_inequality_failure", resource=f"i={i}", details={"i_max": i_max})
            return i
    logger.info(f"Chain inequality verified for 1 <= i <= {i_max}")
    return None


def bounds_sweep(n_max: int) -> Optional[Tuple[int, int]]:
    """First (n, k) with 2 <= k < n <= n_max where the squared bounds fail, or None."""
    for n in range(3, n_max + 1):
        # incremental product from k = n-1 downward keeps the sweep quadratic, not cubic
        product = Fraction(1)
        for k in range(n - 1, 1, -1):
            product *= Fraction(2 * k, 2 * k + 1)
            squared = product * product
            lower = Fraction(k * k * (2 * n + 1), (2 * k + 1) * n * n)
            if not (lower <= squared <= Fraction(k, n)):
                audit_log(action="product_bounds_failure", resource=f"n={n},k={k}", details={"n_max": n_max})
                return n, k
    logger.info(f"Product bounds verified for 2 <= k < n <= {n_max}")
    return None
