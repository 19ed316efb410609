"""
Geometric domain objects for the Wolff lab: lines, affine subspaces, balls and nested affine flags.

Floating point is used throughout; every comparison carries a slack far above rounding error.
Flags validate nesting and scale ordering at construction.
"""
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from app.core.exceptions import DomainError, FlagValidationError

UNIT_TOLERANCE = 1e-12
NESTING_TOLERANCE = 1e-9


def _vector(values: Sequence[float], name: str) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim != 1:
        raise DomainError(f"{name} must be a vector, got shape {array.shape}")
    return array


@dataclass(frozen=True)
class Line:
    """l(t) = base + t * direction, direction of unit Euclidean norm."""
    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", _vector(self.base, "base"))
        object.__setattr__(self, "direction", _vector(self.direction, "direction"))
        if self.base.shape != self.direction.shape:
            raise DomainError("base and direction must live in the same dimension")
        if abs(np.linalg.norm(self.direction) - 1.0) > UNIT_TOLERANCE:
            raise DomainError(f"direction must be a unit vector, |u| = {np.linalg.norm(self.direction)!r}")

    @property
    def dimension(self) -> int:
        return int(self.base.shape[0])


@dataclass(frozen=True)
class LineFamily:
    """Many lines stored column-wise, shape (L, n) each, for vectorized counting."""
    bases: np.ndarray
    directions: np.ndarray

    def __post_init__(self):
        bases = np.atleast_2d(np.asarray(self.bases, dtype=float))
        directions = np.atleast_2d(np.asarray(self.directions, dtype=float))
        if bases.shape != directions.shape:
            raise DomainError(f"bases {bases.shape} and directions {directions.shape} differ in shape")
        norms = np.linalg.norm(directions, axis=1)
        if directions.size and np.max(np.abs(norms - 1.0)) > UNIT_TOLERANCE:
            raise DomainError("every direction must be a unit vector")
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "directions", directions)

    @classmethod
    def from_lines(cls, lines: Sequence[Line]) -> "LineFamily":
        if not lines:
            raise DomainError("an empty line family has no dimension; build it from arrays instead")
        return cls(np.stack([l.base for l in lines]), np.stack([l.direction for l in lines]))

    def __len__(self) -> int:
        return int(self.bases.shape[0])


@dataclass(frozen=True)
class AffineSubspace:
    """V = {x : N^T x = c} with N an orthonormal n x j conormal frame; codim V = j."""
    conormal: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        frame = np.asarray(self.conormal, dtype=float)
        if frame.ndim == 1:
            frame = frame.reshape(-1, 1)
        offset = np.atleast_1d(np.asarray(self.offset, dtype=float))
        if frame.shape[1] != offset.shape[0]:
            raise DomainError(f"conormal frame {frame.shape} does not match offset {offset.shape}")
        gram = frame.T @ frame
        if not np.allclose(gram, np.eye(frame.shape[1]), atol=NESTING_TOLERANCE):
            raise DomainError("conormal frame must be orthonormal")
        object.__setattr__(self, "conormal", frame)
        object.__setattr__(self, "offset", offset)

    @classmethod
    def through(cls, normals: np.ndarray, point: Sequence[float]) -> "AffineSubspace":
        """Subspace through `point` whose conormal space is spanned by the columns of `normals`."""
        frame, _ = np.linalg.qr(np.asarray(normals, dtype=float).reshape(len(point), -1))
        return cls(frame, frame.T @ np.asarray(point, dtype=float))

    @property
    def dimension(self) -> int:
        return int(self.conormal.shape[0])

    @property
    def codim(self) -> int:
        return int(self.conormal.shape[1])

    def anchor(self) -> np.ndarray:
        """The point of V closest to the origin."""
        return self.conormal @ self.offset

    def distance(self, points: np.ndarray) -> np.ndarray:
        return np.linalg.norm(np.atleast_2d(points) @ self.conormal - self.offset, axis=1)

    def contains(self, other: "AffineSubspace") -> bool:
        """other is a subset of self: self's conormals lie in other's span and other's anchor lies in self."""
        projected = other.conormal @ (other.conormal.T @ self.conormal)
        if not np.allclose(projected, self.conormal, atol=NESTING_TOLERANCE):
            return False
        scale = max(1.0, float(np.linalg.norm(other.anchor())))
        return float(self.distance(other.anchor())[0]) <= NESTING_TOLERANCE * scale


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _vector(self.center, "center"))
        if self.radius <= 0:
            raise DomainError(f"ball radius must be positive, got {self.radius!r}")

    def contains_ball(self, other: "Ball") -> bool:
        gap = float(np.linalg.norm(other.center - self.center)) + other.radius
        return gap <= self.radius * (1 + NESTING_TOLERANCE)


@dataclass(frozen=True)
class AffineFlag:
    """
    V_1 > V_2 > ... > V_m with codim V_j = j, nested balls B_{r_1} >= ... >= B_{r_m}, widths rho_j
    and global scale R. (r_j) and (rho_j) are non-increasing in [1, R] with rho_1/r_1 >= R^(-1/2).
    """
    subspaces: List[AffineSubspace]
    balls: List[Ball]
    rho: List[float]
    R: float

    def __post_init__(self):
        m = len(self.subspaces)
        if len(self.balls) != m or len(self.rho) != m:
            raise FlagValidationError("a flag needs one ball and one width per subspace")
        if self.R < 1:
            raise FlagValidationError(f"scale R must be at least 1, got {self.R!r}")
        for j, V in enumerate(self.subspaces, start=1):
            if V.codim != j:
                raise FlagValidationError(f"V_{j} must have codimension {j}, got {V.codim}")
        for j in range(1, m):
            if not self.subspaces[j - 1].contains(self.subspaces[j]):
                raise FlagValidationError(f"V_{j + 1} is not contained in V_{j}")
            if not self.balls[j - 1].contains_ball(self.balls[j]):
                raise FlagValidationError(f"B_{j + 1} is not contained in B_{j}")
        self._check_scales(self.r, "r")
        self._check_scales(self.rho, "rho")
        if m and self.rho[0] / self.r[0] < self.R ** -0.5 * (1 - NESTING_TOLERANCE):
            raise FlagValidationError("rho_1 / r_1 must be at least R^(-1/2)")

    def _check_scales(self, values: Sequence[float], name: str) -> None:
        slack = NESTING_TOLERANCE * self.R
        for j, value in enumerate(values, start=1):
            if not (1 - slack <= value <= self.R + slack):
                raise FlagValidationError(f"{name}_{j} = {value!r} lies outside [1, R]")
        for j in range(1, len(values)):
            if values[j] > values[j - 1] + slack:
                raise FlagValidationError(f"{name} must be non-increasing, {name}_{j + 1} > {name}_{j}")

    @property
    def m(self) -> int:
        return len(self.subspaces)

    @property
    def dimension(self) -> int:
        return self.subspaces[0].dimension if self.subspaces else 0

    @property
    def r(self) -> List[float]:
        return [ball.radius for ball in self.balls]
