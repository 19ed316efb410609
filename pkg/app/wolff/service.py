"""
Falsification harness for the nested Wolff bound in line form.

Each trial samples a direction-separated line family and a random affine flag from a single
seeded generator, counts the lines that occupy every level of the flag, and compares the count
with C prod(rho_j / r_j) R^((n-1)/2 + eps). A count above the bound is a finding.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import DomainError, ResourceGuardError
from app.core.logger import audit_log, logger
from app.core.metrics import falsification_trials_total
from app.wolff.geometry import (
    directions_from_frequencies,
    lattice_spacing,
    min_separation,
    sample_lattice_directions,
    satisfying_mask,
)
from app.wolff.models import AffineFlag, AffineSubspace, Ball, LineFamily
from app.wolff.schemas import ExtremalReport, SuiteSummary, TrialConfig, TrialReport


def theorem_bound(
    n: int,
    m: int,
    R: float,
    r: Sequence[float],
    rho: Sequence[float],
    eps: float,
    C: float,
) -> float:
    """C prod_{j<=m} (rho_j / r_j) R^((n-1)/2 + eps)."""
    if len(r) != m or len(rho) != m:
        raise DomainError(f"need m={m} radii and widths, got {len(r)} and {len(rho)}")
    product = math.prod(p / q for p, q in zip(rho, r))
    return C * product * R ** ((n - 1) / 2 + eps)


def multigrain_direction_bound(n: int, m: int, R: float, r: Sequence[float], eps: float, C: float) -> float:
    """rho_j = r_j^(1/2): C prod r_j^(-1/2) R^((n-1)/2 + eps)."""
    return theorem_bound(n, m, R, r, [math.sqrt(q) for q in r], eps, C)


def nested_tube_bound(n: int, m: int, R: float, r: Sequence[float], eps: float, C: float) -> float:
    """rho_j = R^(1/2): C prod r_j^(-1) R^((n+m-1)/2 + eps)."""
    return theorem_bound(n, m, R, r, [math.sqrt(R)] * m, eps, C)


def single_variety_bound(n: int, j: int, R: float, r: float, eps: float, C: float) -> float:
    """
    A single codimension-j variety emulated by a chain of j superspaces sharing (r, R^(1/2));
    equals C r^(-j) R^((n+j-1)/2 + eps).
    """
    if not (1 <= j <= n - 1):
        raise DomainError(f"codimension must satisfy 1 <= j <= n-1, got j={j}")
    return nested_tube_bound(n, j, R, [r] * j, eps, C)


def _check_config(config: TrialConfig) -> None:
    if config.n > settings.TRIAL_MAX_DIMENSION:
        raise ResourceGuardError(f"n={config.n} exceeds TRIAL_MAX_DIMENSION={settings.TRIAL_MAX_DIMENSION}")
    if config.R > settings.TRIAL_MAX_SCALE:
        raise ResourceGuardError(f"R={config.R} exceeds TRIAL_MAX_SCALE={settings.TRIAL_MAX_SCALE}")
    if config.budget > settings.TRIAL_MAX_BUDGET:
        raise ResourceGuardError(f"budget={config.budget} exceeds TRIAL_MAX_BUDGET={settings.TRIAL_MAX_BUDGET}")


def uniform_in_ball(rng: np.random.Generator, count: int, n: int, radius: float) -> np.ndarray:
    """Uniform points in the centred n-ball: Gaussian direction, radius scaled by U^(1/n)."""
    raw = rng.standard_normal((count, n))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    return raw * (radius * rng.random(count) ** (1.0 / n))[:, None]


def random_scales(rng: np.random.Generator, m: int, R: float) -> Tuple[List[float], List[float]]:
    """
    r_j = R^(u_j) with u_j in [1/2, 1] sorted down; rho_j = min(r_j, s r_j^(1/2)) with one common
    s in [1, R^(1/4)]. Both sequences are non-increasing and rho_1 / r_1 >= R^(-1/2).
    """
    exponents = np.sort(rng.uniform(0.5, 1.0, size=m))[::-1]
    r = [float(R ** u) for u in exponents]
    s = float(R ** rng.uniform(0.0, 0.25))
    rho = [min(q, s * math.sqrt(q)) for q in r]
    return r, rho


def random_flag(
    rng: np.random.Generator,
    n: int,
    m: int,
    R: float,
    r: Optional[Sequence[float]] = None,
    rho: Optional[Sequence[float]] = None,
) -> AffineFlag:
    """
    Nested flag through a random point of B_{R/2}: V_j has conormals q_1..q_j of one random
    orthonormal basis, and each ball centre moves inside the next subspace by at most r_j - r_{j+1}.
    """
    if not r:
        r, rho = random_scales(rng, m, R)
    frame, _ = np.linalg.qr(rng.standard_normal((n, n)))
    anchor = uniform_in_ball(rng, 1, n, R / 2)[0]
    subspaces = [AffineSubspace(frame[:, :j], frame[:, :j].T @ anchor) for j in range(1, m + 1)]

    centers = [anchor]
    for j in range(1, m):
        tangent = frame[:, j + 1:]
        slack = r[j - 1] - r[j]
        step = np.zeros(n)
        if tangent.shape[1] and slack > 0:
            direction = tangent @ rng.standard_normal(tangent.shape[1])
            step = direction / np.linalg.norm(direction) * slack * rng.random() * 0.999
        centers.append(centers[-1] + step)
    balls = [Ball(center, radius) for center, radius in zip(centers, r)]
    return AffineFlag(subspaces=subspaces, balls=balls, rho=list(rho or []), R=R)


def falsification_trial(seed: int, config: TrialConfig) -> TrialReport:
    """Deterministic per seed: lattice directions, bases uniform in B_R, one random flag."""
    _check_config(config)
    rng = np.random.default_rng(seed)
    directions = sample_lattice_directions(config.n, config.R, config.budget, rng)
    bases = uniform_in_ball(rng, directions.shape[0], config.n, config.R)
    family = LineFamily(bases, directions)
    flag = random_flag(rng, config.n, config.m, config.R, config.r or None, config.rho or None)

    count = int(np.count_nonzero(satisfying_mask(family, flag)))
    bound = theorem_bound(config.n, config.m, config.R, flag.r, flag.rho, config.eps, config.C)
    report = TrialReport(
        seed=seed,
        n=config.n,
        m=config.m,
        R=config.R,
        lines=len(family),
        count=count,
        bound=bound,
        ratio=count / bound,
        violated=count > bound,
        r=flag.r,
        rho=flag.rho,
        C=config.C,
        eps=config.eps,
    )
    falsification_trials_total.labels(violated=str(report.violated).lower()).inc()
    if report.violated:
        audit_log(
            action="falsification",
            resource=f"seed={seed}",
            details={"n": config.n, "m": config.m, "R": config.R, "count": count, "bound": bound},
        )
    return report


def _trial_worker(job: Tuple[int, TrialConfig]) -> TrialReport:
    seed, config = job
    return falsification_trial(seed, config)


def run_suite(config: TrialConfig, workers: Optional[int] = None) -> List[TrialReport]:
    """Every seed of the config, in seed order; results do not depend on the worker count."""
    _check_config(config)
    workers = workers or settings.SUITE_WORKERS
    jobs = [(seed, config) for seed in config.seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_trial_worker, jobs))
    else:
        reports = [_trial_worker(job) for job in jobs]
    summary = summarize_suite(config, reports)
    logger.info(
        f"Trial suite finished: n={config.n}, m={config.m}, R={config.R}, seeds={summary.seeds}, "
        f"violations={summary.violations}, nonzero_counts={summary.nonzero_counts}, "
        f"max_ratio={summary.max_ratio:.6g}"
    )
    if not summary.exercised:
        logger.warning(
            f"Trial suite never exercised the bound: every count is 0 at n={config.n}, m={config.m}, R={config.R}"
        )
    return reports


def summarize_suite(config: TrialConfig, reports: Sequence[TrialReport]) -> SuiteSummary:
    return SuiteSummary(
        n=config.n,
        m=config.m,
        R=config.R,
        seeds=len(reports),
        violations=sum(report.violated for report in reports),
        nonzero_counts=sum(report.count > 0 for report in reports),
        max_ratio=max((report.ratio for report in reports), default=0.0),
    )


def write_reports(reports: Iterable[TrialReport], path: str) -> int:
    """Appends one JSON document per line; returns the number written."""
    written = 0
    with Path(path).open("a", encoding="utf-8") as handle:
        for report in reports:
            handle.write(report.model_dump_json() + "\n")
            written += 1
    return written


def extremal_family(n: int, j: int, R: float, seed: int = 0) -> Tuple[LineFamily, AffineFlag]:
    """
    Lines whose directions lie within R^(-1/2) of V = {x_1 = ... = x_j = 0}, with bases in
    V intersected with B_{R/4}. Returned with the chain V_1 > ... > V_j = V at (r, rho) = (R, R^(1/2)),
    in which every member has full occupancy.
    """
    if not (1 <= j <= n - 1):
        raise DomainError(f"extremal family requires 1 <= j <= n-1, got j={j}")
    if not (2 <= n <= settings.TRIAL_MAX_DIMENSION) or R < 4:
        raise DomainError(f"extremal family requires 2 <= n <= {settings.TRIAL_MAX_DIMENSION} and R >= 4")
    h = lattice_spacing(n, R)
    tolerance = R ** -0.5
    # |G(w)| <= sqrt(5), so 2|w_i| / |G(w)| <= R^(-1/2) bounds |k_i| for the constrained coordinates
    near = int(math.ceil(math.sqrt(5) * tolerance / (2 * h)))
    far = int(math.floor(1.0 / h))

    free = n - 1 - j
    axes = [np.arange(-near, near + 1)] * j + [np.arange(-far, far + 1)] * free
    if math.prod(len(a) for a in axes) > settings.LATTICE_POINT_CAP:
        raise ResourceGuardError(f"extremal family for n={n}, j={j}, R={R} exceeds LATTICE_POINT_CAP")
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n - 1) * h
    grid = grid[np.sum(grid ** 2, axis=1) <= 1.0]
    directions = directions_from_frequencies(grid)
    directions = directions[np.linalg.norm(directions[:, :j], axis=1) <= tolerance]

    rng = np.random.default_rng(seed)
    bases = uniform_in_ball(rng, directions.shape[0], n, R / 4)
    bases[:, :j] = 0.0
    family = LineFamily(bases, directions)

    eye = np.eye(n)
    origin = np.zeros(n)
    flag = AffineFlag(
        subspaces=[AffineSubspace(eye[:, :i], np.zeros(i)) for i in range(1, j + 1)],
        balls=[Ball(origin, R) for _ in range(j)],
        rho=[math.sqrt(R)] * j,
        R=R,
    )
    return family, flag


def extremal_report(n: int, j: int, R: float, seed: int = 0) -> ExtremalReport:
    """Size of the extremal family against the C = 1, eps = 0 bound of its emulating chain."""
    family, flag = extremal_family(n, j, R, seed)
    satisfying = int(np.count_nonzero(satisfying_mask(family, flag)))
    bound = theorem_bound(n, j, R, flag.r, flag.rho, eps=0.0, C=1.0)
    separation = None
    if 1 < len(family) <= 5000:
        separation = min_separation(family.directions)
    logger.info(f"Extremal family: n={n}, j={j}, R={R}, size={len(family)}, satisfying={satisfying}")
    return ExtremalReport(
        n=n,
        j=j,
        R=R,
        count=len(family),
        satisfying=satisfying,
        bound=bound,
        ratio=len(family) / bound,
        min_separation=separation,
    )
