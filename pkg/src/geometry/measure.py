"""
Radial measure of the symmetric space: density, balls, annuli
"""
import logging
from functools import lru_cache

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad, simpson

from ..exceptions import DomainError
from ..models.space import Annulus, SpaceParams

logger = logging.getLogger(__name__)

QUAD_ABS = 1e-10
QUAD_REL = 1e-8


def density(p: SpaceParams, s):
    """
    Radial density δ(s) = ω_{n-1} sinh(s)^{m1} (sinh(2s)/2)^{m2}

    Args:
        p: Space parameters
        s: Radius or array of radii (s >= 0)

    Returns:
        δ(s), with the shape of s
    """
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0):
        raise DomainError("density is defined for s >= 0 only")
    value = p.sphere_area * np.sinh(s_arr) ** p.m1 * (0.5 * np.sinh(2 * s_arr)) ** p.m2
    return float(value) if np.ndim(s) == 0 else value


@lru_cache(maxsize=4096)
def _ball_measure(p: SpaceParams, r: float) -> float:
    value, error = quad(lambda s: density(p, s), 0.0, r, epsabs=QUAD_ABS, epsrel=QUAD_REL, limit=200)
    logger.debug(f"μ(B(o,{r:.4g})) = {value:.12g} ± {error:.1e} on {p.label}")
    return value


def ball_measure(p: SpaceParams, r: float) -> float:
    """
    Measure of the ball B(o, r)

    Args:
        p: Space parameters
        r: Radius (> 0)

    Returns:
        ∫_0^r δ(s) ds
    """
    if not r > 0:
        raise DomainError(f"ball radius must be positive, got {r}")
    return _ball_measure(p, float(r))


def annulus_measure(p: SpaceParams, a: Annulus) -> float:
    """
    Measure of the annulus A_{R-r}^{R+r} (a ball when R <= r)

    Args:
        p: Space parameters
        a: Annulus

    Returns:
        ∫ δ(s) ds over [a.lower, a.upper]
    """
    if a.upper == 0:
        return 0.0
    if a.is_ball:
        return ball_measure(p, a.upper)
    value, _ = quad(lambda s: density(p, s), a.lower, a.upper, epsabs=QUAD_ABS, epsrel=QUAD_REL, limit=200)
    return value


def radial_integral(p: SpaceParams, s_grid, values) -> complex:
    """Composite Simpson approximation of ∫ F(s) δ(s) ds on a profile grid"""
    s_grid = np.asarray(s_grid, dtype=float)
    return simpson(np.asarray(values) * density(p, s_grid), x=s_grid)


def radial_quantile(p: SpaceParams, lower: float, upper: float, u, knots: int = 8193) -> np.ndarray:
    """
    Inverse of the normalized radial distribution of μ on [lower, upper]

    Args:
        p: Space parameters
        lower: Inner radius
        upper: Outer radius
        u: Probabilities in [0, 1]
        knots: Tabulation size

    Returns:
        Radii s with μ(A_lower^s) = u μ(A_lower^upper)
    """
    s = np.linspace(lower, upper, knots)
    cdf = cumulative_trapezoid(density(p, s), s, initial=0.0)
    cdf /= cdf[-1]
    return np.interp(np.asarray(u, dtype=float), cdf, s)
