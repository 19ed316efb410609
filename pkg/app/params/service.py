"""
Multigrain parameter system (gamma_j, sigma_i, p_i, alpha_i, beta_i) and the exponent identities.

Every builder is generic over its scalar: pass an int n for exact Fractions, or
RationalFunction.variable() for rational functions of n. Sums start from Fraction(0) and
reciprocals go through _recip so that no int/int division ever produces a float.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple, Union

from app.broad.service import p_broad
from app.core.exact import RationalFunction
from app.core.exceptions import DomainError, ExactDivisionError
from app.core.logger import audit_log, logger
from app.core.metrics import identity_checks_total
from app.core.rendering import render
from app.params.schemas import (
    BetaConvention,
    ConventionOutcome,
    SweepReport,
    VerificationReport,
)

Scalar = Union[Fraction, RationalFunction]
Dimension = Union[int, RationalFunction]
Guard = Callable[[str, Sequence[Scalar]], None]

HALF = Fraction(1, 2)

REPORT_NOTES = [
    "Residuals are verified at delta = 0; the O(delta) perturbation that makes Y_i + O(delta) "
    "non-positive is not mechanized.",
    "X_{m+1} is undefined (it would need beta_{m+1}); only Y_{m+1} is computed at index m+1.",
    "The stated ordering p_{n-k} >= ... >= p_0 conflicts with the defining equation, under which "
    "p_i increases with i, and with 0 <= beta_i <= 1; the verified convention is reported without "
    "asserting which reading was intended.",
]


@dataclass(frozen=True)
class MultigrainParams:
    """
    Parameter system at a fixed (n, m). Sequences are 0-based Python tuples:
    gamma[j] = gamma_j, p[i] = p_i, beta[i] = beta_i, sigma[i - 1] = sigma_i (sigma_{m+1} = 0 last),
    alpha[i - 1] = alpha_i, X[i - 1] = X_i, Y[i - 1] = Y_i.
    """
    n: Dimension
    m: int
    gamma: Tuple[Scalar, ...]
    sigma: Tuple[Scalar, ...]
    p: Tuple[Scalar, ...]
    alpha: Tuple[Scalar, ...]
    beta: Tuple[Scalar, ...]
    convention: BetaConvention
    X: Tuple[Scalar, ...] = field(default=())
    Y: Tuple[Scalar, ...] = field(default=())

    def residuals(self) -> List[Tuple[str, Scalar]]:
        named = [(f"X_{i}", x) for i, x in enumerate(self.X, start=1)]
        named += [(f"Y_{i}", y) for i, y in enumerate(self.Y, start=1)]
        return named

    def quantities(self) -> List[Tuple[str, Scalar]]:
        """Every stored quantity with its symbol, for coherence checks."""
        out: List[Tuple[str, Scalar]] = []
        for name, seq, start in (
            ("gamma", self.gamma, 0),
            ("sigma", self.sigma, 1),
            ("p", self.p, 0),
            ("alpha", self.alpha, 1),
            ("beta", self.beta, 0),
        ):
            out += [(f"{name}_{i}", v) for i, v in enumerate(seq, start=start)]
        return out + self.residuals()


def _recip(x: Any) -> Scalar:
    if x == 0:
        raise ExactDivisionError(f"reciprocal of zero ({x!r})", dividend=1, divisor=x)
    return Fraction(1) / x


def _check_indices(n: Dimension, m: int) -> None:
    if m < 0:
        raise DomainError(f"m must be non-negative, got m={m}")
    if isinstance(n, int) and m > n - 2:
        raise DomainError(f"require 0 <= m <= n-2, got n={n}, m={m}")


def render_scalar(x: Scalar) -> str:
    return render(x) if isinstance(x, Fraction) else x.render("n")


def gamma_weights(n: Dimension, m: int) -> List[Scalar]:
    """
    gamma_j = ((n-m-1)/2) / ((n-j)(n-j-1)) * prod_{i=n-m}^{n-j} 2i/(2i+1) for 1 <= j <= m,
    gamma_0 = 1 - sum. The product is accumulated from j = m downward.
    """
    _check_indices(n, m)
    weights: List[Scalar] = [Fraction(1)] * (m + 1)
    if m == 0:
        return weights
    half = (n - m - 1) * HALF
    product: Scalar = Fraction(1)
    for j in range(m, 0, -1):
        product = product * (2 * (n - j)) * _recip(2 * (n - j) + 1)
        weights[j] = half * product * _recip((n - j) * (n - j - 1))
    weights[0] = 1 - sum(weights[1:], Fraction(0))
    return weights


def sigma_tail_sums(gamma: Sequence[Scalar]) -> List[Scalar]:
    """sigma_i = sum_{j=i}^{m} gamma_j for 1 <= i <= m+1, sigma_{m+1} = 0."""
    m = len(gamma) - 1
    tails: List[Scalar] = [Fraction(0)] * (m + 1)
    for i in range(m, 0, -1):
        tails[i - 1] = tails[i] + gamma[i]
    return tails


def inverse_gaps(n: Dimension, m: int, gamma: Optional[Sequence[Scalar]] = None) -> List[Scalar]:
    """(1/2 - 1/p_i)^-1 = 2n - m - i + sum_{j=i+1}^{m} (j-i) gamma_j, via T_{i-1} = T_i + sigma_i."""
    if gamma is None:
        gamma = gamma_weights(n, m)
    w: List[Scalar] = [Fraction(0)] * (m + 1)
    weighted: Scalar = Fraction(0)
    tail: Scalar = Fraction(0)
    for i in range(m, -1, -1):
        w[i] = weighted + (2 * n - m - i)
        if i > 0:
            tail = tail + gamma[i]
            weighted = weighted + tail
    return w


def lebesgue_exponents(n: Dimension, m: int, gamma: Optional[Sequence[Scalar]] = None) -> List[Scalar]:
    """p_0..p_m from the defining equation; p_m = 2(n-m)/(n-m-1)."""
    _check_indices(n, m)
    return [2 * w * _recip(w - 2) for w in inverse_gaps(n, m, gamma)]


def _gap(p: Scalar) -> Scalar:
    """1/2 - 1/p, refusing p = 2."""
    if isinstance(p, Fraction) and p < 2:
        raise DomainError(f"Lebesgue exponents must be at least 2, got {render(p)}")
    z = HALF - _recip(p)
    if z == 0:
        raise ExactDivisionError("p_i = 2 makes 1/2 - 1/p_i vanish", dividend=HALF, divisor=z)
    return z


def beta_ratios(
    p: Sequence[Scalar],
    convention: BetaConvention = BetaConvention.RECIPROCAL,
) -> Tuple[List[Scalar], List[Scalar]]:
    """
    (beta_0..beta_m, alpha_1..alpha_m).
    printed: beta_i = z_i/z_0, alpha_i = z_i/z_{i-1}; reciprocal inverts both; z_i = 1/2 - 1/p_i.
    """
    z = [_gap(q) for q in p]
    if convention is BetaConvention.PRINTED:
        beta = [zi * _recip(z[0]) for zi in z]
        alpha = [z[i] * _recip(z[i - 1]) for i in range(1, len(z))]
    else:
        beta = [z[0] * _recip(zi) for zi in z]
        alpha = [z[i - 1] * _recip(z[i]) for i in range(1, len(z))]
    beta[0] = Fraction(1)
    return beta, alpha


def identity_residuals(params: MultigrainParams) -> Tuple[List[Scalar], List[Scalar]]:
    """
    X_i = (beta_{i-1} - beta_i)/2 - ((1 + sigma_i)/2) z_0            for 1 <= i <= m,
    Y_i = beta_{i-1}/2 - (1 + (n - i)(1 - sigma_i)) z_0              for 1 <= i <= m+1,
    with z_0 = 1/2 - 1/p_0.
    """
    n, m, beta, sigma = params.n, params.m, params.beta, params.sigma
    z0 = _gap(params.p[0])
    xs = [
        (beta[i - 1] - beta[i]) * HALF - (1 + sigma[i - 1]) * HALF * z0
        for i in range(1, m + 1)
    ]
    ys = [
        beta[i - 1] * HALF - (1 + (n - i) * (1 - sigma[i - 1])) * z0
        for i in range(1, m + 2)
    ]
    return xs, ys


def build_params(
    n: Dimension,
    m: int,
    convention: BetaConvention = BetaConvention.RECIPROCAL,
    guard: Optional[Guard] = None,
) -> MultigrainParams:
    """Runs the whole pipeline; `guard` is called on each stage, e.g. to enforce a degree cap."""
    check = guard or (lambda stage, values: None)
    gamma = gamma_weights(n, m)
    check("gamma", gamma)
    p = lebesgue_exponents(n, m, gamma)
    check("p", p)
    beta, alpha = beta_ratios(p, convention)
    check("beta", beta)
    params = MultigrainParams(
        n=n,
        m=m,
        gamma=tuple(gamma),
        sigma=tuple(sigma_tail_sums(gamma)),
        p=tuple(p),
        alpha=tuple(alpha),
        beta=tuple(beta),
        convention=convention,
    )
    xs, ys = identity_residuals(params)
    check("residuals", xs + ys)
    return replace(params, X=tuple(xs), Y=tuple(ys))


def p0_closed_form(n: Dimension, m: int) -> Scalar:
    """2 + 6 / (2(n-1) + (n-m-1) prod_{i=n-m}^{n-1} 2i/(2i+1))."""
    _check_indices(n, m)
    product: Scalar = Fraction(1)
    for t in range(1, m + 1):
        product = product * (2 * (n - t)) * _recip(2 * (n - t) + 1)
    return 2 + 6 * _recip(2 * (n - 1) + (n - m - 1) * product)


def convention_outcome(params: MultigrainParams) -> ConventionOutcome:
    in_unit = None
    if all(isinstance(b, Fraction) for b in params.beta):
        in_unit = all(0 <= b <= 1 for b in params.beta)
    return ConventionOutcome(
        convention=params.convention,
        residuals={name: render_scalar(v) for name, v in params.residuals()},
        all_zero=all(v == 0 for _, v in params.residuals()),
        beta=[render_scalar(b) for b in params.beta],
        beta_in_unit_interval=in_unit,
    )


def verified_outcome(outcomes: Sequence[ConventionOutcome]) -> Optional[ConventionOutcome]:
    """First convention zeroing every residual, reciprocal listed first."""
    return next((o for o in outcomes if o.all_zero), None)


def _verify(n: int, m: int) -> VerificationReport:
    _check_indices(n, m)
    built = [build_params(n, m, c) for c in (BetaConvention.RECIPROCAL, BetaConvention.PRINTED)]
    outcomes = [convention_outcome(params) for params in built]
    chosen = verified_outcome(outcomes)
    reference = built[0]

    gamma, p = reference.gamma, reference.p
    gamma_ok = sum(gamma, Fraction(0)) == 1 and all(0 <= g <= 1 for g in gamma)
    defining_ok = _recip(_gap(p[m])) == 2 * (n - m)
    closed = p0_closed_form(n, m)

    return VerificationReport(
        n=n,
        m=m,
        convention=chosen.convention if chosen else None,
        residuals=(chosen or outcomes[0]).residuals,
        all_zero=chosen is not None,
        p0=render(p[0]),
        p0_closed_form_match=(p[0] == closed),
        gamma_invariants=gamma_ok,
        defining_equation_ok=defining_ok,
        cross_module_match=(p[0] == p_broad(n, n - m).p),
        exponents_increasing=all(a < b for a, b in zip(p, p[1:])),
        conventions=outcomes,
        notes=list(REPORT_NOTES),
    )


def verify_identities(n: int, m: int) -> VerificationReport:
    """Full pipeline at (n, m) under both conventions, plus the closed-form and cross-module checks."""
    report = _verify(n, m)
    result = "fail" if report.finding else "pass"
    identity_checks_total.labels(result=result).inc()
    if report.finding:
        audit_log(
            action="identity_failure",
            resource=f"n={n},m={m}",
            details={"all_zero": report.all_zero, "p0_closed_form_match": report.p0_closed_form_match},
        )
    logger.info(f"Identities verified: n={n}, m={m}, convention={report.convention}, result={result}")
    return report


def verify_sweep(n_max: int) -> SweepReport:
    """Every 0 <= m <= n-2 for 2 <= n <= n_max; failing pairs are listed, never dropped."""
    if n_max < 2:
        raise DomainError(f"sweep requires n_max >= 2, got {n_max}")
    failures: List[Tuple[int, int]] = []
    checked = 0
    for n in range(2, n_max + 1):
        for m in range(0, n - 1):
            checked += 1
            report = _verify(n, m)
            if report.finding:
                failures.append((n, m))
                audit_log(action="identity_failure", resource=f"n={n},m={m}", details={"sweep": n_max})
    identity_checks_total.labels(result="fail" if failures else "pass").inc(checked)
    logger.info(f"Identity sweep finished: n_max={n_max}, pairs={checked}, failures={len(failures)}")
    return SweepReport(n_max=n_max, pairs_checked=checked, failures=failures)
