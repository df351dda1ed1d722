"""
Transform plans: spherical-function tables on fixed (s, λ) grids

A plan holds φ_λ(s) and ∂_sφ_λ(s) for every grid pair together with the
radial density and the Plancherel density, so that forward and inverse
transforms reduce to weighted Simpson sums. Plans are immutable and cached
per (space, grids).
"""
import logging
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from ..config import GridSpec
from ..exceptions import DomainError, OverflowIntegralError
from ..geometry.measure import density
from ..models.space import SpaceParams
from ..specfun.cfunction import plancherel_density
from ..specfun.spherical import spherical_table

logger = logging.getLogger(__name__)

PLAN_CACHE_SIZE = 8
# reference bump (1 - (s/b)²)^8 on [0, b] used to calibrate the Plancherel constant
REFERENCE_SUPPORT = 1.5
REFERENCE_POWER = 8
REFERENCE_S_POINTS = 601
REFERENCE_LAM_MAX = 60.0
REFERENCE_LAM_POINTS = 3001


def lam_grid_from(spec: GridSpec) -> np.ndarray:
    """Uniform λ-grid [0, lam_max] of a grid spec"""
    return np.linspace(0.0, spec.lam_max, spec.lam_points)


def s_grid_from(spec: GridSpec, s_max: Optional[float] = None, points: Optional[int] = None) -> np.ndarray:
    """Uniform s-grid [0, s_max] with the step of a grid spec"""
    s_max = spec.s_max if s_max is None else s_max
    if points is None:
        step = (spec.s_max - spec.s_min) / (spec.s_points - 1)
        points = max(int(math.ceil(s_max / step)) + 1, 3)
    return np.linspace(0.0, s_max, points)


def _check_grid(grid: np.ndarray, name: str) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise DomainError(f"{name} needs at least three points")
    if grid[0] < 0 or np.any(np.diff(grid) <= 0):
        raise DomainError(f"{name} must be nonnegative and strictly increasing")
    return grid


@dataclass(frozen=True, eq=False)
class TransformPlan:
    """Precomputed tables for transforms between one s-grid and one λ-grid"""
    p: SpaceParams
    s_grid: np.ndarray
    lam_grid: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    radial_weight: np.ndarray
    spectral_weight: np.ndarray
    constant: float

    def forward_values(self, values) -> np.ndarray:
        """∫ F(s) φ_λ(s) δ(s) ds for every grid λ"""
        values = np.asarray(values)
        result = simpson(self.phi * (values * self.radial_weight)[None, :], x=self.s_grid, axis=1)
        if not np.all(np.isfinite(result)):
            raise OverflowIntegralError("forward transform integral is not finite",
                                        {"space": self.p.label, "s_max": float(self.s_grid[-1])})
        return result

    def inverse_values(self, spectrum, derivative: bool = False) -> np.ndarray:
        """C_P ∫ g(λ) φ_λ(s) |c(λ)|^{-2} dλ (or with ∂_sφ_λ) for every grid s"""
        table = self.dphi if derivative else self.phi
        weights = np.asarray(spectrum) * self.spectral_weight
        return self.constant * simpson(table * weights[:, None], x=self.lam_grid, axis=0)


def _build_tables(p: SpaceParams, s_grid: np.ndarray, lam_grid: np.ndarray):
    table = spherical_table(p, lam_grid, s_grid)
    return table.values, table.derivatives


@lru_cache(maxsize=32)
def plancherel_constant(p: SpaceParams) -> float:
    """
    Plancherel constant C_P fitted on a reference bump

    C_P minimizes the weighted L² distance between the bump and
    C_P · inverse(forward(bump)) computed with unit constant.

    Args:
        p: Space parameters

    Returns:
        Calibrated C_P
    """
    s = np.linspace(0.0, REFERENCE_SUPPORT, REFERENCE_S_POINTS)
    lam = np.linspace(0.0, REFERENCE_LAM_MAX, REFERENCE_LAM_POINTS)
    bump = (1 - (s / REFERENCE_SUPPORT) ** 2) ** REFERENCE_POWER
    phi, _ = _build_tables(p, s, lam)
    weight = density(p, s)
    spectrum = simpson(phi * (bump * weight)[None, :], x=s, axis=1)
    unscaled = simpson(phi * (spectrum * plancherel_density(p, lam))[:, None], x=lam, axis=0)
    numerator = simpson(bump * unscaled * weight, x=s)
    denominator = simpson(unscaled ** 2 * weight, x=s)
    constant = float(numerator / denominator)
    analytic = 2 ** (2 * p.rho) / (2 * math.pi * p.sphere_area)
    logger.debug(f"Plancherel constant on {p.label}: calibrated {constant:.12g}, "
                 f"closed form {analytic:.12g}, ratio {constant / analytic:.10f}")
    return constant


_PLANS: "OrderedDict[tuple, TransformPlan]" = OrderedDict()
_PLANS_LOCK = threading.Lock()


def get_plan(p: SpaceParams, s_grid, lam_grid) -> TransformPlan:
    """
    Cached transform plan for (p, s_grid, lam_grid)

    Args:
        p: Space parameters
        s_grid: Strictly increasing radii >= 0
        lam_grid: Strictly increasing frequencies >= 0

    Returns:
        TransformPlan shared by every caller with the same grids
    """
    s_grid = _check_grid(s_grid, "s_grid")
    lam_grid = _check_grid(lam_grid, "lam_grid")
    key = (p, s_grid.tobytes(), lam_grid.tobytes())
    with _PLANS_LOCK:
        plan = _PLANS.get(key)
        if plan is not None:
            _PLANS.move_to_end(key)
            return plan
        logger.debug(f"Building transform plan on {p.label}: {s_grid.size} radii up to {s_grid[-1]:.3g}, "
                     f"{lam_grid.size} frequencies up to {lam_grid[-1]:.3g}")
        phi, dphi = _build_tables(p, s_grid, lam_grid)
        plan = TransformPlan(
            p=p,
            s_grid=s_grid,
            lam_grid=lam_grid,
            phi=phi,
            dphi=dphi,
            radial_weight=density(p, s_grid),
            spectral_weight=plancherel_density(p, lam_grid),
            constant=plancherel_constant(p),
        )
        _PLANS[key] = plan
        while len(_PLANS) > PLAN_CACHE_SIZE:
            _PLANS.popitem(last=False)
        return plan


def clear_plans() -> None:
    with _PLANS_LOCK:
        _PLANS.clear()
