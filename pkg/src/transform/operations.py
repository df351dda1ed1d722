"""
Spherical Fourier transform, inversion, Plancherel norm, convolution and multipliers
"""
import logging
import math
from typing import Callable, Optional

import numpy as np
from scipy.integrate import simpson

from ..config import GridSpec
from ..exceptions import DomainError
from ..geometry.measure import density
from ..models.profile import RadialProfile, Spectrum
from ..models.space import SpaceParams
from ..specfun.cfunction import plancherel_density
from .plan import get_plan, lam_grid_from, plancherel_constant

logger = logging.getLogger(__name__)

# share of the spectral mass allowed in the top 5% of the λ-grid before warning
TAIL_WARNING = 1e-6
TAIL_FRACTION = 0.05

DEFAULT_GRID = GridSpec()


def _lam_grid(lam_grid) -> np.ndarray:
    return lam_grid_from(DEFAULT_GRID) if lam_grid is None else np.asarray(lam_grid, dtype=float)


def forward(p: SpaceParams, f: RadialProfile, lam_grid=None) -> Spectrum:
    """
    Spherical transform f̃(λ) = ∫ F(s) φ_λ(s) δ(s) ds

    Args:
        p: Space parameters
        f: Radial profile (zero beyond its grid)
        lam_grid: Frequencies; defaults to [0, 60] with 3001 points

    Returns:
        Spectrum on lam_grid
    """
    plan = get_plan(p, f.s_grid, _lam_grid(lam_grid))
    values = plan.forward_values(f.values)
    return Spectrum(plan.lam_grid, values, {"space": p.label, "s_max": f.s_max})


def tail_share(p: SpaceParams, g: Spectrum) -> float:
    """Fraction of ∫|g||c|^{-2} dλ carried by the top 5% of the grid"""
    weight = np.abs(g.values) * plancherel_density(p, g.lam_grid)
    total = simpson(weight, x=g.lam_grid)
    if total == 0:
        return 0.0
    start = min(int(g.lam_grid.size * (1 - TAIL_FRACTION)), g.lam_grid.size - 2)
    tail = simpson(weight[start:], x=g.lam_grid[start:])
    return float(abs(tail) / abs(total))


def inverse(p: SpaceParams, g: Spectrum, s_grid, derivative: bool = False) -> RadialProfile:
    """
    Inverse transform F(s) = C_P ∫_0^{λ_max} g(λ) φ_λ(s) |c(λ)|^{-2} dλ

    Args:
        p: Space parameters
        g: Spectrum
        s_grid: Output radii
        derivative: Return ∂_sF instead of F

    Returns:
        RadialProfile; meta carries the relative tail estimate
    """
    plan = get_plan(p, s_grid, g.lam_grid)
    values = plan.inverse_values(g.values, derivative=derivative)
    share = tail_share(p, g)
    if share > TAIL_WARNING:
        logger.warning(f"Spectrum not decayed at λ_max = {g.lam_max:.3g}: "
                       f"top {TAIL_FRACTION:.0%} of the grid carries {share:.2e} of the mass")
    return RadialProfile(plan.s_grid, values, {"space": p.label, "tail_estimate": share})


def plancherel_norm(p: SpaceParams, g: Spectrum) -> float:
    """(C_P ∫ |g(λ)|² |c(λ)|^{-2} dλ)^{1/2}"""
    integral = simpson(np.abs(g.values) ** 2 * plancherel_density(p, g.lam_grid), x=g.lam_grid)
    return math.sqrt(max(plancherel_constant(p) * float(integral), 0.0))


def lp_norm(p: SpaceParams, f: RadialProfile, q: float = 2.0) -> float:
    """
    (∫ |F(s)|^q δ(s) ds)^{1/q} by Simpson's rule on the profile grid

    Args:
        p: Space parameters
        f: Radial profile
        q: Exponent in [1, ∞]; math.inf gives the sup norm

    Returns:
        The L^q norm
    """
    if q == math.inf:
        return float(np.max(np.abs(f.values)))
    if not q >= 1:
        raise DomainError(f"L^q norms need q >= 1, got {q}")
    integrand = np.abs(f.values) ** q * density(p, f.s_grid)
    return float(max(simpson(integrand, x=f.s_grid), 0.0) ** (1.0 / q))


def gradient_norm(p: SpaceParams, f: RadialProfile) -> float:
    """‖∇f‖₂ = (∫ |F'(s)|² δ(s) ds)^{1/2} with second-order differences"""
    derivative = np.gradient(f.values, f.s_grid, edge_order=2)
    return lp_norm(p, f.with_values(derivative), 2.0)


def convolution_grid(*profiles: RadialProfile) -> np.ndarray:
    """[0, sum of support ends] at the finest step of the inputs"""
    step = min(float(np.min(np.diff(prof.s_grid))) for prof in profiles)
    reach = sum(prof.s_max for prof in profiles)
    return np.linspace(0.0, reach, int(math.ceil(reach / step)) + 1)


def radial_convolve(p: SpaceParams, f: RadialProfile, g: RadialProfile,
                    lam_grid=None, s_grid=None) -> RadialProfile:
    """
    Convolution of two radial functions as inverse(forward(f) · forward(g))

    Args:
        p: Space parameters
        f: First profile
        g: Second profile
        lam_grid: Frequencies used for both transforms
        s_grid: Output radii; defaults to convolution_grid(f, g)

    Returns:
        RadialProfile of f∗g
    """
    lam_grid = _lam_grid(lam_grid)
    spectrum = forward(p, f, lam_grid) * forward(p, g, lam_grid)
    out_grid = convolution_grid(f, g) if s_grid is None else s_grid
    return _tagged(inverse(p, spectrum, out_grid), operation="convolution")


def _tagged(profile: RadialProfile, **meta) -> RadialProfile:
    return profile.with_values(profile.values, **meta)


SymbolLike = Callable[[np.ndarray], np.ndarray]


def multiplier_values(m: SymbolLike, lam_grid: np.ndarray) -> np.ndarray:
    """
    Values of a bounded multiplier on the real grid

    Args:
        m: A Symbol (checked for boundedness) or a plain vectorized callable
        lam_grid: Real frequencies

    Returns:
        m(λ) on the grid (real when the imaginary part vanishes)
    """
    if not getattr(m, "is_bounded", True):
        raise DomainError(f"symbol of order {getattr(m, 'order', '?')} is unbounded on the real line")
    values = np.asarray(m(np.asarray(lam_grid, dtype=float)))
    if not np.all(np.isfinite(values)):
        raise DomainError("multiplier is not finite on the real line")
    if np.iscomplexobj(values) and np.all(values.imag == 0):
        values = values.real
    return values


def multiplier_apply(p: SpaceParams, m: SymbolLike, f: RadialProfile,
                     lam_grid=None, s_grid=None,
                     factor: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> RadialProfile:
    """
    U_m f = inverse(m · forward(f))

    Args:
        p: Space parameters
        m: Multiplier bounded on the real line
        f: Radial profile
        lam_grid: Frequencies
        s_grid: Output radii; defaults to the grid of f
        factor: Extra bounded factor of λ (e.g. cos(tλ))

    Returns:
        RadialProfile of U_m f
    """
    lam_grid = _lam_grid(lam_grid)
    values = multiplier_values(m, lam_grid)
    if factor is not None:
        values = values * np.asarray(factor(lam_grid))
    spectrum = forward(p, f, lam_grid)
    out_grid = f.s_grid if s_grid is None else s_grid
    return _tagged(inverse(p, spectrum.with_values(spectrum.values * values), out_grid),
                   operation="multiplier")
