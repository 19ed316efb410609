"""
Broad-to-linear optimization.

A k-broad estimate at exponent p implies the linear estimate when 2 + 4/(2n-k) <= p <= 2 + 2/(k-2).
For each k the deliverable exponent is max(p_n(k), 2 + 4/(2n-k)); the linear exponent is its
minimum over 2 <= k <= n. p_n(k) is strictly decreasing and the lower limit strictly increasing in
k, so the minimum sits where the two cross. The crossing is located by bisection on exact integer
comparisons, which keeps n = 10^5 tractable; candidate_sweep mirrors the reference loop over all k.
"""
from fractions import Fraction
from typing import List, Optional

from app.broad.service import broad_value, dyadic_product, product_terms
from app.core.exceptions import DomainError
from app.core.logger import audit_log, logger
from app.linear.registry import PRIOR_REGISTRY, PUBLISHED_EXPONENTS, PriorRegistry
from app.linear.schemas import CandidateRow, LinearResult, TableRow

# Marker for "no upper constraint" (k = 2).
UNCONSTRAINED = None


def p_limit(n: int, k: int) -> Fraction:
    """Lower end 2 + 4/(2n-k) of the admissible range."""
    if n < 3 or k < 2 or k > n:
        raise DomainError(f"p_limit requires n >= 3 and 2 <= k <= n, got n={n}, k={k}")
    return 2 + Fraction(4, 2 * n - k)


def p_upper_bg(n: int, k: int) -> Optional[Fraction]:
    """Upper end 2 + 2/(k-2); UNCONSTRAINED at k = 2."""
    if k < 2:
        raise DomainError(f"p_upper_bg requires k >= 2, got k={k}")
    if k == 2:
        return UNCONSTRAINED
    return 2 + Fraction(2, k - 2)


def _broad_exponent_fast(n: int, k: int) -> Fraction:
    a, b = product_terms(k, n)
    return 2 + Fraction(6 * b, 2 * (n - 1) * b + (k - 1) * a)


def _broad_at_most_limit(n: int, k: int) -> bool:
    # 6/(2(n-1) + (k-1)A/B) <= 4/(2n-k)  <=>  6(2n-k)B <= 4(2(n-1)B + (k-1)A)
    a, b = product_terms(k, n)
    return 6 * (2 * n - k) * b <= 4 * (2 * (n - 1) * b + (k - 1) * a)


def _crossing(n: int) -> int:
    """Smallest k in [2, n] with p_n(k) <= p_limit(n, k); k = n always qualifies for n >= 3."""
    lo, hi = 2, n
    while lo < hi:
        mid = (lo + hi) // 2
        if _broad_at_most_limit(n, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _upper_ok(n: int, k: int, p: Fraction) -> bool:
    upper = p_upper_bg(n, k)
    return upper is UNCONSTRAINED or p <= upper


def linear_exponent(n: int) -> LinearResult:
    """
    argmin over k in {2..n} of max(p_n(k), p_limit(n, k)).
    Ties go to the smaller k with the tie flag set; a failing upper constraint is reported, not dropped.
    """
    if n < 3:
        raise DomainError(f"linear exponent requires n >= 3, got n={n}")

    k0 = _crossing(n)
    k_opt, tie = k0, False
    broad_at_k: Optional[Fraction] = None
    if k0 > 2:
        # below the crossing the broad exponent dominates, above it the limit does
        left = _broad_exponent_fast(n, k0 - 1)
        right = p_limit(n, k0)
        if left <= right:
            k_opt, tie, broad_at_k = k0 - 1, left == right, left

    if broad_at_k is None:
        broad_at_k = _broad_exponent_fast(n, k_opt)
    limit_at_k = p_limit(n, k_opt)
    p = max(broad_at_k, limit_at_k)
    upper_ok = _upper_ok(n, k_opt, p)
    if not upper_ok:
        audit_log(
            action="upper_constraint_failure",
            resource=f"n={n}",
            details={"k_opt": k_opt, "p": str(p)},
        )

    logger.info(f"Linear exponent computed: n={n}, k_opt={k_opt}, tie={tie}, upper_ok={upper_ok}")
    return LinearResult(
        n=n,
        k_opt=k_opt,
        p=p,
        p_broad_at_k=broad_at_k,
        p_limit_at_k=limit_at_k,
        upper_ok=upper_ok,
        tie=tie,
    )


def candidate_sweep(n: int) -> List[CandidateRow]:
    """Every k = 2..n with its broad, limit and deliverable exponent (the reference loop)."""
    if n < 3:
        raise DomainError(f"candidate sweep requires n >= 3, got n={n}")
    rows = []
    for k in range(2, n + 1):
        broad = broad_value(n, k, dyadic_product(k, n))
        limit = p_limit(n, k)
        rows.append(CandidateRow(k=k, p_broad=broad, p_limit=limit, p_max=max(broad, limit)))
    return rows


def state_of_art_table(
    n_min: int,
    n_max: int,
    registry: PriorRegistry = PRIOR_REGISTRY,
) -> List[TableRow]:
    """One row per n; the new exponent wins unless a prior entry is at least as good."""
    if not (3 <= n_min <= n_max):
        raise DomainError(f"table requires 3 <= n_min <= n_max, got {n_min}..{n_max}")

    rows: List[TableRow] = []
    for n in range(n_min, n_max + 1):
        result = linear_exponent(n)
        prior = registry.get(n)
        winner = "new" if prior is None or result.p < prior.exponent else "prior"
        published = PUBLISHED_EXPONENTS.get(n)
        match = None if published is None else published == result.p
        if match is False:
            audit_log(
                action="published_exponent_mismatch",
                resource=f"n={n}",
                details={"computed": str(result.p), "published": str(published)},
            )
        rows.append(TableRow(
            n=n,
            new_p=result.p,
            prior_p=prior.exponent if prior else None,
            attribution=prior.attribution if prior else None,
            winner=winner,
            k_opt=result.k_opt,
            upper_ok=result.upper_ok,
            published_match=match,
        ))
    logger.info(f"State-of-the-art table built for {n_min} <= n <= {n_max}")
    return rows


def k_equals_n_wins(n_max: int) -> List[int]:
    """Dimensions 3 <= n <= n_max whose optimum uses k = n, outside 2 <= k <= n-1."""
    return [n for n in range(3, n_max + 1) if linear_exponent(n).k_opt == n]
