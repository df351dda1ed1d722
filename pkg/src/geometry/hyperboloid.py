"""
Hyperboloid model of real hyperbolic space
"""
import logging
import math
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.stats import norm, qmc

from ..exceptions import DomainError, InvalidPointError
from ..models.space import ModelPoint, SpaceParams
from .measure import ball_measure, radial_quantile

logger = logging.getLogger(__name__)

POINT_TOLERANCE = 1e-9


def minkowski(x, y) -> np.ndarray:
    """Minkowski form x0 y0 - x1 y1 - ... - xn yn along the last axis"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x[..., 0] * y[..., 0] - np.sum(x[..., 1:] * y[..., 1:], axis=-1)


def model_distance(x: ModelPoint, y: ModelPoint) -> float:
    """
    Hyperbolic distance arccosh <x, y>

    Args:
        x: First point
        y: Second point (same dimension)

    Returns:
        d(x, y)
    """
    if x.dimension != y.dimension:
        raise InvalidPointError("points live on hyperboloids of different dimension")
    ip = float(minkowski(x.coords, y.coords))
    if ip < 1 - POINT_TOLERANCE * max(1.0, abs(ip)):
        raise InvalidPointError(f"<x, y> = {ip} < 1: points are not on the same sheet")
    return math.acosh(max(ip, 1.0))


def distances(points, center) -> np.ndarray:
    """Distances from each row of points to center (coordinate arrays)"""
    return np.arccosh(np.maximum(minkowski(points, center), 1.0))


def geodesic_length(x: ModelPoint, y: ModelPoint) -> float:
    """
    Length of the geodesic from x to y integrated along the curve

    The geodesic is the normalized chord c(τ) = x + τ(y - x), which stays in
    the plane through the origin spanned by x and y.
    """
    cx = x.coords
    dc = y.coords - x.coords

    def speed(tau: float) -> float:
        c = cx + tau * dc
        q = float(minkowski(c, c))
        dq = 2 * float(minkowski(c, dc))
        velocity = dc / math.sqrt(q) - c * dq / (2 * q ** 1.5)
        return math.sqrt(max(-float(minkowski(velocity, velocity)), 0.0))

    length, _ = quad(speed, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    return length


def boost(center) -> Callable[[np.ndarray], np.ndarray]:
    """
    Isometry of the hyperboloid taking the origin to center

    Args:
        center: Coordinates of the image of the origin

    Returns:
        Function mapping (N, n+1) coordinate arrays
    """
    z = np.asarray(center, dtype=float)
    spatial = z[1:]
    sinh_a = float(np.linalg.norm(spatial))
    if sinh_a == 0:
        return lambda points: np.asarray(points, dtype=float)
    u = spatial / sinh_a
    cosh_a = z[0]

    def apply(points) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        x0 = points[:, 0]
        xv = points[:, 1:]
        ux = xv @ u
        out = np.empty_like(points)
        out[:, 0] = cosh_a * x0 + sinh_a * ux
        out[:, 1:] = xv + ((cosh_a - 1) * ux + sinh_a * x0)[:, None] * u
        return out

    return apply


def sample_region(p: SpaceParams, lower: float, upper: float, count: int, seed: int) -> np.ndarray:
    """
    Quasi-random points distributed according to μ on the annulus [lower, upper]

    Radii follow the inverse radial distribution; directions come from
    normalized Gaussian coordinates. Deterministic given seed.

    Args:
        p: Space parameters (m2 = 0)
        lower: Inner radius
        upper: Outer radius
        count: Number of points
        seed: Scrambling seed

    Returns:
        (count, n+1) array of hyperboloid coordinates
    """
    if not p.has_model:
        raise DomainError("the point model needs m2 = 0")
    if count < 1:
        raise DomainError("sample count must be positive")
    n = p.n
    engine = qmc.Halton(d=n + 1, scramble=True, seed=np.random.default_rng(seed))
    u = np.clip(engine.random(count), 1e-12, 1 - 1e-12)
    radii = radial_quantile(p, lower, upper, u[:, 0])
    directions = norm.ppf(u[:, 1:])
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    points = np.empty((count, n + 1))
    points[:, 0] = np.cosh(radii)
    points[:, 1:] = np.sinh(radii)[:, None] * directions
    return points


def ball_sample(p: SpaceParams, center, radius: float, count: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Equal-weight quadrature points for B(center, radius)

    The same base sample of B(o, radius) is moved by the boost to every center,
    so integrals over congruent balls use congruent rules.

    Returns:
        (points, weights) with weights summing to μ(B(o, radius))
    """
    base = sample_region(p, 0.0, radius, count, seed)
    points = boost(center)(base)
    weights = np.full(count, ball_measure(p, radius) / count)
    return points, weights
