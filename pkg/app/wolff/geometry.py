"""
Direction lattices, exact line occupancy and vectorized counting.

Directions come from the frequency lattice c_n R^(-1/2) Z^(n-1) intersected with the unit ball,
mapped through G(w) = (-2w, 1) and normalized. Occupancy of a line in N_rho(V) within a ball is a
pair of quadratic inequalities in the line parameter, solved in closed form.
"""
import math
from typing import Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import DomainError, ResourceGuardError
from app.core.logger import logger
from app.wolff.models import AffineFlag, AffineSubspace, Ball, Line, LineFamily

# Nearest lattice directions are at least this multiple of c_n R^(-1/2) apart (radial neighbours at
# |w| = 1 give 2h/5; the constant keeps a margin below that).
SEPARATION_CONSTANT = 0.35


def lattice_spacing(n: int, R: float) -> float:
    """c_n R^(-1/2) with c_n = 1 / (2 sqrt(n - 1))."""
    return 1.0 / (2.0 * math.sqrt(n - 1)) / math.sqrt(R)


def _check_lattice_args(n: int, R: float) -> None:
    if not (2 <= n <= settings.TRIAL_MAX_DIMENSION):
        raise DomainError(f"lattice requires 2 <= n <= {settings.TRIAL_MAX_DIMENSION}, got n={n}")
    if R < 4:
        raise DomainError(f"lattice requires R >= 4, got R={R}")


def estimated_lattice_size(n: int, R: float) -> float:
    """Volume of the unit (n-1)-ball over the cell volume h^(n-1)."""
    d = n - 1
    ball_volume = math.pi ** (d / 2) / math.gamma(d / 2 + 1)
    return ball_volume / lattice_spacing(n, R) ** d


def directions_from_frequencies(omega: np.ndarray) -> np.ndarray:
    """G(w) / |G(w)| with G(w) = (-2w, 1), row-wise."""
    omega = np.atleast_2d(omega)
    lifted = np.hstack([-2.0 * omega, np.ones((omega.shape[0], 1))])
    return lifted / np.linalg.norm(lifted, axis=1, keepdims=True)


def _lattice_indices(d: int, radius: int, h: float) -> np.ndarray:
    """Integer points k in Z^d with |k| h <= 1, enumerated one leading coordinate at a time."""
    if d == 1:
        ks = np.arange(-radius, radius + 1)
        return ks[(ks * h) ** 2 <= 1.0].reshape(-1, 1)
    slices = []
    for lead in range(-radius, radius + 1):
        remaining = 1.0 - (lead * h) ** 2
        if remaining < 0:
            continue
        inner = int(math.floor(math.sqrt(remaining) / h))
        rest = _lattice_indices(d - 1, inner, h)
        rest = rest[np.sum((rest * h) ** 2, axis=1) <= remaining]
        slices.append(np.hstack([np.full((rest.shape[0], 1), lead), rest]))
    return np.vstack(slices)


def lattice_frequencies(n: int, R: float) -> np.ndarray:
    """Every w in c_n R^(-1/2) Z^(n-1) with |w| <= 1."""
    _check_lattice_args(n, R)
    estimate = estimated_lattice_size(n, R)
    if estimate > settings.LATTICE_POINT_CAP:
        raise ResourceGuardError(
            f"direction lattice for n={n}, R={R} has about {estimate:.3g} points "
            f"(LATTICE_POINT_CAP={settings.LATTICE_POINT_CAP})"
        )
    h = lattice_spacing(n, R)
    indices = _lattice_indices(n - 1, int(math.floor(1.0 / h)), h)
    return indices * h


def direction_lattice(n: int, R: float) -> np.ndarray:
    """Unit directions of shape (N, n); N is Theta(R^((n-1)/2))."""
    directions = directions_from_frequencies(lattice_frequencies(n, R))
    logger.info(f"Direction lattice built: n={n}, R={R}, size={directions.shape[0]}")
    return directions


def sample_lattice_directions(n: int, R: float, budget: int, rng: np.random.Generator) -> np.ndarray:
    """
    Up to `budget` distinct lattice directions, drawn uniformly by rejection from the bounding cube.
    Small lattices are materialized and subsampled instead.
    """
    _check_lattice_args(n, R)
    if budget < 1:
        raise DomainError(f"budget must be positive, got {budget}")
    h = lattice_spacing(n, R)
    estimate = estimated_lattice_size(n, R)
    if estimate <= 4 * budget:
        # guarded by LATTICE_POINT_CAP inside lattice_frequencies
        omega = lattice_frequencies(n, R)
        if omega.shape[0] > budget:
            omega = omega[np.sort(rng.choice(omega.shape[0], size=budget, replace=False))]
        return directions_from_frequencies(omega)

    radius = int(math.floor(1.0 / h))
    chosen: dict = {}
    while len(chosen) < budget:
        draws = rng.integers(-radius, radius + 1, size=(2 * (budget - len(chosen)) + 16, n - 1))
        inside = draws[np.sum((draws * h) ** 2, axis=1) <= 1.0]
        for row in inside:
            chosen.setdefault(tuple(int(k) for k in row), None)
            if len(chosen) == budget:
                break
    indices = np.array(list(chosen), dtype=float)
    return directions_from_frequencies(indices * h)


def pairwise_angles(directions: np.ndarray) -> np.ndarray:
    """Angles between all distinct pairs; intended for families of a few thousand directions."""
    cosines = np.clip(directions @ directions.T, -1.0, 1.0)
    upper = np.triu_indices(directions.shape[0], k=1)
    return np.arccos(cosines[upper])


def min_separation(
    directions: np.ndarray,
    sample_pairs: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """Smallest angle between distinct directions, exhaustive or over `sample_pairs` random pairs."""
    count = directions.shape[0]
    if count < 2:
        return math.inf
    if sample_pairs is None:
        return float(np.min(pairwise_angles(directions)))
    rng = rng or np.random.default_rng(0)
    i = rng.integers(0, count, size=sample_pairs)
    j = rng.integers(0, count - 1, size=sample_pairs)
    j = np.where(j >= i, j + 1, j)
    cosines = np.clip(np.sum(directions[i] * directions[j], axis=1), -1.0, 1.0)
    return float(np.min(np.arccos(cosines)))


def _quadratic_window(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    {t : a t^2 + 2 b t + c <= 0} for a >= 0, as [lo, hi] (lo > hi when empty).
    a = 0 gives the whole line when c <= 0 (b is then 0 as well).
    """
    lo = np.full(a.shape, np.inf)
    hi = np.full(a.shape, -np.inf)
    flat = a <= 1e-30
    lo[flat & (c <= 0)] = -np.inf
    hi[flat & (c <= 0)] = np.inf
    curved = ~flat
    disc = b[curved] ** 2 - a[curved] * c[curved]
    root = np.sqrt(np.maximum(disc, 0.0))
    lo_c = np.where(disc >= 0, (-b[curved] - root) / a[curved], np.inf)
    hi_c = np.where(disc >= 0, (-b[curved] + root) / a[curved], -np.inf)
    lo[curved] = lo_c
    hi[curved] = hi_c
    return lo, hi


def occupancy_lengths(family: LineFamily, V: AffineSubspace, rho: float, ball: Ball) -> np.ndarray:
    """Length of {t : dist(l(t), V) <= rho, l(t) in ball} for every line of the family."""
    if rho <= 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    # dist^2(l(t), V) = |N^T b - c + t N^T u|^2
    offset = family.bases @ V.conormal - V.offset
    drift = family.directions @ V.conormal
    slab_lo, slab_hi = _quadratic_window(
        np.sum(drift ** 2, axis=1),
        np.sum(offset * drift, axis=1),
        np.sum(offset ** 2, axis=1) - rho ** 2,
    )
    # |b + t u - x0|^2 <= r^2 with |u| = 1
    rel = family.bases - ball.center
    ball_lo, ball_hi = _quadratic_window(
        np.ones(len(family)),
        np.sum(rel * family.directions, axis=1),
        np.sum(rel ** 2, axis=1) - ball.radius ** 2,
    )
    return np.maximum(0.0, np.minimum(slab_hi, ball_hi) - np.maximum(slab_lo, ball_lo))


def line_occupancy(line: Line, V: AffineSubspace, rho: float, ball: Ball) -> float:
    """H^1 measure of the part of the line inside N_rho(V) and the ball."""
    return float(occupancy_lengths(LineFamily(line.base, line.direction), V, rho, ball)[0])


def satisfying_mask(family: LineFamily, flag: AffineFlag) -> np.ndarray:
    """Lines whose occupancy in N_{rho_j}(V_j) within B_{r_j} reaches r_j for every j."""
    guard = 1.0 - settings.OCCUPANCY_RELATIVE_GUARD
    mask = np.ones(len(family), dtype=bool)
    for V, ball, rho in zip(flag.subspaces, flag.balls, flag.rho):
        mask &= occupancy_lengths(family, V, rho, ball) >= ball.radius * guard
    return mask


def count_satisfying(family: LineFamily, flag: AffineFlag) -> int:
    return int(np.count_nonzero(satisfying_mask(family, flag)))


def monte_carlo_occupancy(
    line: Line,
    V: AffineSubspace,
    rho: float,
    ball: Ball,
    samples: int,
    rng: np.random.Generator,
) -> float:
    """Chord length of the ball times the fraction of uniform chord samples lying in N_rho(V)."""
    rel = line.base - ball.center
    b = float(rel @ line.direction)
    disc = b * b - (float(rel @ rel) - ball.radius ** 2)
    if disc <= 0:
        return 0.0
    t_lo, t_hi = -b - math.sqrt(disc), -b + math.sqrt(disc)
    ts = rng.uniform(t_lo, t_hi, size=samples)
    points = line.base + ts[:, None] * line.direction
    inside = V.distance(points) <= rho
    return (t_hi - t_lo) * float(np.mean(inside))
