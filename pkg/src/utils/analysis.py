"""
Numerical analysis helpers: regressions, ratio statistics and finite differences
"""
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np


def linear_slope(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float]:
    """
    Least-squares line through (x, y)

    Args:
        x: Abscissae
        y: Ordinates

    Returns:
        (slope, intercept); NaNs when fewer than two finite points remain
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = np.isfinite(x) & np.isfinite(y)
    if keep.sum() < 2:
        return math.nan, math.nan
    slope, intercept = np.polyfit(x[keep], y[keep], 1)
    return float(slope), float(intercept)


def log_slope(t: Sequence[float], values: Sequence[float]) -> float:
    """Slope of log(values) against t (exponential growth rate)"""
    values = np.asarray(values, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(values > 0, np.log(values), np.nan)
    return linear_slope(t, logs)[0]


def loglog_slope(x: Sequence[float], values: Sequence[float]) -> float:
    """Slope of log(values) against log(x) (power-law exponent)"""
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        lx = np.where(x > 0, np.log(x), np.nan)
        ly = np.where(values > 0, np.log(values), np.nan)
    return linear_slope(lx, ly)[0]


def ratio_spread(values: Sequence[float]) -> float:
    """max/min of positive finite values; inf if any is zero or non-finite"""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return math.nan
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        return math.inf
    return float(values.max() / values.min())


def fitted_constant(measured, envelope, mask: Optional[np.ndarray] = None) -> float:
    """
    Fitted constant C* = max(|measured| / envelope) over masked points

    Args:
        measured: Sampled values
        envelope: Positive envelope at the same points
        mask: Optional boolean selection

    Returns:
        C*, 0.0 for an empty selection, inf if any ratio is non-finite
    """
    measured = np.abs(np.asarray(measured))
    envelope = np.asarray(envelope, dtype=float)
    if mask is not None:
        measured = measured[mask]
        envelope = envelope[mask]
    if measured.size == 0:
        return 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = measured / envelope
    if not np.all(np.isfinite(ratios)):
        return math.inf
    return float(ratios.max())


def fd_step(x) -> np.ndarray:
    """Finite-difference step h = 1e-5 (1 + |x|)"""
    return 1e-5 * (1.0 + np.abs(x))


def central_derivative(fn: Callable[[np.ndarray], np.ndarray], x, order: int = 1,
                       step: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Central finite difference of order 0, 1 or 2 along the real direction

    Args:
        fn: Vectorized function (real or complex arguments)
        x: Evaluation points
        order: Derivative order in {0, 1, 2}
        step: Step sizes; defaults to fd_step(Re x)

    Returns:
        Array of derivative estimates
    """
    x = np.asarray(x)
    if order == 0:
        return np.asarray(fn(x))
    h = fd_step(np.real(x)) if step is None else np.asarray(step)
    if order == 1:
        return (np.asarray(fn(x + h)) - np.asarray(fn(x - h))) / (2 * h)
    if order == 2:
        # wider step keeps roundoff in check
        h = h * 10
        return (np.asarray(fn(x + h)) - 2 * np.asarray(fn(x)) + np.asarray(fn(x - h))) / h ** 2
    raise ValueError(f"derivative order {order} is not supported")


def smooth_transition(x) -> np.ndarray:
    """
    C-infinity step: 0 for x <= 0, 1 for x >= 1, with chi(x) + chi(1 - x) = 1

    Args:
        x: Points

    Returns:
        chi(x)
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        b = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return a / (a + b)


def smooth_transition_derivative(x) -> np.ndarray:
    """Exact derivative of smooth_transition"""
    x = np.asarray(x, dtype=float)
    inside = (x > 0) & (x < 1)
    out = np.zeros_like(x)
    xi = x[inside]
    a = np.exp(-1.0 / xi)
    b = np.exp(-1.0 / (1.0 - xi))
    da = a / xi ** 2
    db = -b / (1.0 - xi) ** 2
    out[inside] = (da * b - a * db) / (a + b) ** 2
    return out
