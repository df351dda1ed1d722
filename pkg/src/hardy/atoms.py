"""
Construction and validation of h1-atoms
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..config import DEFAULT_SEED, Tolerances
from ..exceptions import DomainError
from ..geometry.hyperboloid import ball_sample, boost, distances, sample_region
from ..geometry.measure import ball_measure, radial_integral
from ..models.atom import Atom, AtomKind, AtomValidation, StepFunction
from ..models.profile import RadialProfile
from ..models.space import ModelPoint, SpaceParams

logger = logging.getLogger(__name__)

BUMP_POINTS = 801
# QMC points per unit-ball volume when nothing else is requested
DEFAULT_BALL_POINTS = 10000
MIN_BALL_POINTS = 256
# width of the shell sampled outside the support, relative to the radius
SUPPORT_SHELL = 0.25
SUPPORT_SAMPLES = 2048


def points_per_ball(p: SpaceParams, radius: float, per_unit_ball: int = DEFAULT_BALL_POINTS) -> int:
    """QMC sample size for B(z, radius), proportional to its volume with a floor"""
    share = ball_measure(p, radius) / ball_measure(p, 1.0)
    return max(MIN_BALL_POINTS, int(math.ceil(per_unit_ball * share)))


def _size_bound(p: SpaceParams, radius: float) -> float:
    return ball_measure(p, radius) ** -0.5


def _validate_profile(p: SpaceParams, a: Atom, tol: Tolerances) -> AtomValidation:
    prof = a.profile
    values = np.real(prof.values)
    integral = float(radial_integral(p, prof.s_grid, values))
    l1 = float(radial_integral(p, prof.s_grid, np.abs(values)))
    l2 = math.sqrt(max(float(radial_integral(p, prof.s_grid, values ** 2)), 0.0))
    excess = max(0.0, prof.support_radius() - a.radius)
    return _report(p, a, tol, integral, l1, l2, excess, "quadrature", 0.0)


def _validate_steps(p: SpaceParams, a: Atom, tol: Tolerances) -> AtomValidation:
    steps = a.steps
    order = np.argsort(steps.radii)
    radii = steps.radii[order]
    heights = steps.heights[order]
    # value on the shell (radii[i-1], radii[i]] is the sum of the heights of the outer balls
    shell_values = np.cumsum(heights[::-1])[::-1]
    measures = np.array([ball_measure(p, radius) for radius in radii])
    shells = np.diff(np.concatenate([[0.0], measures]))
    integral = float(np.sum(shell_values * shells))
    l1 = float(np.sum(np.abs(shell_values) * shells))
    l2 = math.sqrt(float(np.sum(shell_values ** 2 * shells)))
    excess = max(0.0, float(radii[-1]) - a.radius)
    return _report(p, a, tol, integral, l1, l2, excess, "exact", 0.0)


def _validate_function(p: SpaceParams, a: Atom, tol: Tolerances, count: int, seed: int) -> AtomValidation:
    points, weights = ball_sample(p, a.center.coords, a.radius, count, seed)
    values = np.asarray(a.function(points), dtype=float)
    integral = float(np.sum(weights * values))
    l1 = float(np.sum(weights * np.abs(values)))
    l2 = math.sqrt(float(np.sum(weights * values ** 2)))
    spread = float(np.std(values)) * float(np.sum(weights)) / math.sqrt(count)
    # sample a shell just outside the ball for leftover mass
    shell = sample_region(p, a.radius, a.radius * (1 + SUPPORT_SHELL), SUPPORT_SAMPLES, seed + 7)
    moved = boost(a.center.coords)(shell)
    outside = np.abs(np.asarray(a.function(moved), dtype=float))
    excess = 0.0
    if np.any(outside > 0):
        gaps = distances(moved, a.center.coords)
        excess = float(np.max(gaps[outside > 0]) - a.radius)
    return _report(p, a, tol, integral, l1, l2, max(excess, 0.0), "qmc", spread)


def _report(p: SpaceParams, a: Atom, tol: Tolerances, integral: float, l1: float, l2: float,
            excess: float, method: str, error: float) -> AtomValidation:
    bound = _size_bound(p, a.radius)
    cancellation_ok = True
    if a.kind is AtomKind.STANDARD:
        cancellation_ok = abs(integral) <= tol.cancellation * max(l1, 1e-300) or l1 == 0
    return AtomValidation(
        support_ok=excess <= 1e-12,
        size_ok=l2 <= bound + tol.size_slack,
        cancellation_ok=cancellation_ok,
        l2_norm=l2,
        size_bound=bound,
        integral=integral,
        l1_norm=l1,
        support_excess=excess,
        method=method,
        error_estimate=error,
    )


def validate_atom(p: SpaceParams, a: Atom, tolerances: Optional[Tolerances] = None,
                  points: Optional[int] = None, seed: int = DEFAULT_SEED) -> AtomValidation:
    """
    Check support, size and (for standard atoms) cancellation

    Profiles are integrated with Simpson's rule on their grid, step functions
    exactly through ball measures, and model functions with the seeded
    quasi-Monte Carlo ball rule.

    Args:
        p: Space parameters
        a: Atom
        tolerances: Cancellation and size slack
        points: QMC sample size for model-function atoms
        seed: QMC seed

    Returns:
        AtomValidation (report only, never raises)
    """
    tol = tolerances or Tolerances()
    if a.profile is not None:
        return _validate_profile(p, a, tol)
    if a.steps is not None:
        return _validate_steps(p, a, tol)
    count = points or points_per_ball(p, a.radius)
    return _validate_function(p, a, tol, count, seed)


def _bump(x, power: int = 4):
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) < 1, (1 - x ** 2) ** power, 0.0)


def _normalized(p: SpaceParams, grid: np.ndarray, values: np.ndarray, radius: float) -> np.ndarray:
    norm = math.sqrt(float(radial_integral(p, grid, values ** 2)))
    return values * (_size_bound(p, radius) / norm)


def standard_bump_atom(p: SpaceParams, r: float, points: int = BUMP_POINTS, label: str = "") -> Atom:
    """
    Smooth mean-zero radial atom on B(o, r) with ‖a‖₂ = μ(B)^{-1/2}

    a = b(s/r) - κ b(2s/r) with b(x) = (1 - x²)^4 and κ fixed by ∫a = 0.
    """
    if not 0 < r <= 1:
        raise DomainError(f"atom radius must lie in (0, 1], got {r}")
    points += (points + 1) % 2
    grid = np.linspace(0.0, r, points)
    outer = _bump(grid / r)
    inner = _bump(2 * grid / r)
    kappa = float(radial_integral(p, grid, outer) / radial_integral(p, grid, inner))
    values = _normalized(p, grid, outer - kappa * inner, r)
    profile = RadialProfile(grid, values, {"atom": "standard_bump", "r": r})
    return Atom(AtomKind.STANDARD, r, profile=profile, label=label or f"standard_bump_r{r:g}")


def global_bump_atom(p: SpaceParams, points: int = BUMP_POINTS, label: str = "global_bump") -> Atom:
    """Positive radial global atom b(s) = (1 - s²)^4 on B(o, 1), size-normalized"""
    points += (points + 1) % 2
    grid = np.linspace(0.0, 1.0, points)
    values = _normalized(p, grid, _bump(grid), 1.0)
    return Atom(AtomKind.GLOBAL, 1.0, profile=RadialProfile(grid, values, {"atom": "global_bump"}), label=label)


def step_atom(p: SpaceParams, radii: Sequence[float], heights: Sequence[float],
              kind: AtomKind = AtomKind.STANDARD, center: Optional[ModelPoint] = None,
              radius: Optional[float] = None, label: str = "") -> Atom:
    """
    Atom made of nested ball indicators Σ h_k 1[d(x, z) <= r_k]

    Args:
        p: Space parameters
        radii: Ball radii
        heights: Heights
        kind: Standard or global
        center: Ball center (origin when None)
        radius: Atom radius; defaults to the largest ball radius
        label: Tag

    Returns:
        Atom with a StepFunction representation
    """
    steps = StepFunction(np.asarray(radii, dtype=float), np.asarray(heights, dtype=float))
    radius = float(np.max(steps.radii)) if radius is None else radius
    return Atom(kind, radius, steps=steps, center=center, label=label)
