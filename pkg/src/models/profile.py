"""
Data models for sampled radial functions and their spectra
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from ..exceptions import DomainError


def _check_grid(grid: np.ndarray, name: str) -> None:
    if grid.ndim != 1 or grid.size < 2:
        raise DomainError(f"{name} must be a one-dimensional grid with at least two points")
    if not np.all(np.isfinite(grid)):
        raise DomainError(f"{name} contains non-finite entries")
    if np.any(np.diff(grid) <= 0):
        raise DomainError(f"{name} must be strictly increasing")


def _as_values(values, size: int) -> np.ndarray:
    values = np.asarray(values)
    if not np.iscomplexobj(values):
        values = values.astype(float)
    if values.shape != (size,):
        raise DomainError(f"values have shape {values.shape}, expected ({size},)")
    if not np.all(np.isfinite(values)):
        raise DomainError("values must be finite")
    return values


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Radial function f(x) = F(|x|) sampled on an s-grid starting at 0"""
    s_grid: np.ndarray
    values: np.ndarray
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        grid = np.asarray(self.s_grid, dtype=float)
        _check_grid(grid, "s_grid")
        if grid[0] < 0:
            raise DomainError("s_grid must be nonnegative")
        object.__setattr__(self, "s_grid", grid)
        object.__setattr__(self, "values", _as_values(self.values, grid.size))

    @property
    def s_max(self) -> float:
        return float(self.s_grid[-1])

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values)

    @classmethod
    def zeros(cls, s_grid) -> "RadialProfile":
        s_grid = np.asarray(s_grid, dtype=float)
        return cls(s_grid, np.zeros_like(s_grid))

    @classmethod
    def from_function(cls, fn, s_grid, **meta) -> "RadialProfile":
        s_grid = np.asarray(s_grid, dtype=float)
        return cls(s_grid, fn(s_grid), dict(meta))

    def with_values(self, values, **meta) -> "RadialProfile":
        merged = dict(self.meta)
        merged.update(meta)
        return RadialProfile(self.s_grid, values, merged)

    def real_part(self, tolerance: Optional[float] = None) -> "RadialProfile":
        """Drop the imaginary part; optionally insist that it is below tolerance"""
        if self.is_real:
            return self
        if tolerance is not None:
            worst = float(np.max(np.abs(self.values.imag)))
            if worst > tolerance * max(1.0, float(np.max(np.abs(self.values)))):
                raise DomainError(f"profile has imaginary part {worst:.3e}")
        return self.with_values(self.values.real.copy())

    def support_radius(self, threshold: float = 0.0) -> float:
        """Largest grid point where |F| exceeds threshold (0.0 for the zero profile)"""
        above = np.nonzero(np.abs(self.values) > threshold)[0]
        return float(self.s_grid[above[-1]]) if above.size else 0.0

    def evaluate(self, s) -> np.ndarray:
        """Interpolate F at s; zero beyond s_max"""
        s = np.asarray(s, dtype=float)
        spline = CubicSpline(self.s_grid, self.values)
        inside = (s >= self.s_grid[0]) & (s <= self.s_max)
        out = np.zeros(s.shape, dtype=self.values.dtype)
        out[inside] = spline(s[inside])
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s_grid": self.s_grid.tolist(),
            "values_re": np.real(self.values).tolist(),
            "values_im": np.imag(self.values).tolist(),
            "meta": dict(self.meta),
        }


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Even spherical transform sampled on λ >= 0"""
    lam_grid: np.ndarray
    values: np.ndarray
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        grid = np.asarray(self.lam_grid, dtype=float)
        _check_grid(grid, "lam_grid")
        if grid[0] < 0:
            raise DomainError("lam_grid must be nonnegative")
        object.__setattr__(self, "lam_grid", grid)
        object.__setattr__(self, "values", _as_values(self.values, grid.size))

    @property
    def lam_max(self) -> float:
        return float(self.lam_grid[-1])

    @classmethod
    def zeros(cls, lam_grid) -> "Spectrum":
        lam_grid = np.asarray(lam_grid, dtype=float)
        return cls(lam_grid, np.zeros_like(lam_grid))

    @classmethod
    def from_function(cls, fn, lam_grid, **meta) -> "Spectrum":
        lam_grid = np.asarray(lam_grid, dtype=float)
        return cls(lam_grid, fn(lam_grid), dict(meta))

    def with_values(self, values, **meta) -> "Spectrum":
        merged = dict(self.meta)
        merged.update(meta)
        return Spectrum(self.lam_grid, values, merged)

    def __mul__(self, other: "Spectrum") -> "Spectrum":
        if not isinstance(other, Spectrum) or not np.array_equal(self.lam_grid, other.lam_grid):
            raise DomainError("spectra must share a λ-grid to be multiplied")
        return Spectrum(self.lam_grid, self.values * other.values)

    def evaluate(self, lam) -> np.ndarray:
        """Interpolate at |λ|; zero beyond lam_max"""
        lam = np.abs(np.asarray(lam, dtype=float))
        spline = CubicSpline(self.lam_grid, self.values)
        inside = (lam >= self.lam_grid[0]) & (lam <= self.lam_max)
        out = np.zeros(lam.shape, dtype=self.values.dtype)
        out[inside] = spline(lam[inside])
        return out
