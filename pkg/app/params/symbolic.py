"""
Symbolic verification of the multigrain identities as rational functions of n.

Each product over i = n-m..n-j has m-j+1 factors, so every quantity is a rational function of n
at fixed m. The validity domain n > m+1 is certified by Sturm root counts on every denominator.
"""
from fractions import Fraction
from typing import Dict, List, Sequence, Set

from app.core.config import settings
from app.core.exact import Polynomial, RationalFunction, real_roots_above, rf_eval
from app.core.exceptions import DomainError, ResourceGuardError
from app.core.logger import audit_log, logger
from app.core.metrics import identity_checks_total
from app.params.schemas import BetaConvention, CoherenceReport, SymbolicReport
from app.params.service import (
    REPORT_NOTES,
    MultigrainParams,
    Scalar,
    build_params,
    convention_outcome,
    p0_closed_form,
    render_scalar,
    verified_outcome,
)


def _as_function(x: Scalar) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction.constant(x)


def _check_m(m: int) -> None:
    if not (1 <= m <= settings.SYMBOLIC_MAX_M):
        raise DomainError(f"symbolic verification requires 1 <= m <= {settings.SYMBOLIC_MAX_M}, got m={m}")


def _degree_guard(stage: str, values: Sequence[Scalar]) -> None:
    cap = settings.SYMBOLIC_DEGREE_CAP
    for v in values:
        degree = _as_function(v).degree
        if degree > cap:
            raise ResourceGuardError(f"degree {degree} at stage {stage!r} exceeds SYMBOLIC_DEGREE_CAP={cap}")


def symbolic_params(m: int, convention: BetaConvention = BetaConvention.RECIPROCAL) -> MultigrainParams:
    """Parameter system with n left as an indeterminate."""
    _check_m(m)
    return build_params(RationalFunction.variable(), m, convention, guard=_degree_guard)


def _denominators(functions: Sequence[RationalFunction]) -> List[Polynomial]:
    seen: Set[Polynomial] = set()
    out: List[Polynomial] = []
    for f in functions:
        den = f.den
        if den.degree > 0 and den not in seen:
            seen.add(den)
            out.append(den)
    return out


def verify_identities_symbolic(m: int) -> SymbolicReport:
    """
    Residuals reduce to the zero function under the verified convention, p_0(n) equals the closed
    form, and no denominator vanishes for n > m+1.
    """
    _check_m(m)
    built = [symbolic_params(m, c) for c in (BetaConvention.RECIPROCAL, BetaConvention.PRINTED)]
    outcomes = [convention_outcome(params) for params in built]
    chosen = verified_outcome(outcomes)
    reference = built[0]

    closed = _as_function(p0_closed_form(RationalFunction.variable(), m))
    p0 = _as_function(reference.p[0])
    gamma_sum = sum(reference.gamma, Fraction(0))

    functions = [_as_function(v) for _, v in reference.quantities()] + [closed]
    denominators = _denominators(functions)
    bound = m + 1
    roots_in_domain = sum(real_roots_above(den, bound) for den in denominators)
    poles = sorted({t for den in denominators for t in range(0, bound + 1) if den(t) == 0})

    report = SymbolicReport(
        m=m,
        convention=chosen.convention if chosen else None,
        residuals=(chosen or outcomes[0]).residuals,
        all_zero=chosen is not None,
        p0=p0.render("n"),
        p0_closed_form_match=(p0 == closed),
        gamma_sum_ok=(gamma_sum == 1),
        gamma=[render_scalar(g) for g in reference.gamma],
        conventions=outcomes,
        validity_domain=f"n > {bound}",
        denominators_checked=len(denominators),
        roots_in_domain=roots_in_domain,
        poles_at_or_below=poles,
        max_degree=max(f.degree for f in functions),
        notes=list(REPORT_NOTES),
    )
    result = "fail" if report.finding else "pass"
    identity_checks_total.labels(result=result).inc()
    if report.finding:
        audit_log(
            action="identity_failure",
            resource=f"symbolic m={m}",
            details={"all_zero": report.all_zero, "roots_in_domain": roots_in_domain},
        )
    logger.info(
        f"Symbolic identities verified: m={m}, denominators={len(denominators)}, "
        f"max_degree={report.max_degree}, result={result}"
    )
    return report


def coherence_check(m: int, n: int) -> CoherenceReport:
    """Evaluates every symbolic quantity at n and compares it with the numeric pipeline."""
    _check_m(m)
    if n < m + 2:
        raise DomainError(f"coherence check requires n >= m+2, got n={n}, m={m}")
    symbolic = dict(symbolic_params(m).quantities())
    numeric: Dict[str, Scalar] = dict(build_params(n, m).quantities())
    mismatches = [
        name for name, f in symbolic.items()
        if rf_eval(_as_function(f), n) != numeric[name]
    ]
    if mismatches:
        audit_log(action="coherence_failure", resource=f"n={n},m={m}", details={"quantities": mismatches})
    return CoherenceReport(n=n, m=m, quantities_checked=len(symbolic), mismatches=mismatches)
