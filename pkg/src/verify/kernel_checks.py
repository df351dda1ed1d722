"""
Envelope checks of the wave kernel K_t, its derivative and its split parts
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from ..config import GridSpec, KernelOptions
from ..exceptions import DomainError
from ..models.report import BoundReport
from ..models.space import SpaceParams
from ..propagator.kernel import (WaveKernel, split_kernel, split_kernel_derivative, split_small_t_singular,
                                 wave_kernel)
from ..propagator.symbols import Symbol, make_symbol
from ..transform.plan import lam_grid_from
from .base import BoundCheck, Sample, fit_region, grid_metadata
from .envelopes import (NEAR, SPHERE, EnvelopeSpec, Regime, Target, good_part_spec, kernel_spec,
                        singular_derivative_spec, small_t_split_specs)

logger = logging.getLogger(__name__)

# extra radii per refinement level: s -> 0, s < t, and |s - t| down to CONE_GAP
SMALL_S_SAMPLE = 8
INNER_SAMPLE = 24
CONE_SAMPLE = 8
CONE_GAP = 0.02


def check_grid(grid: GridSpec, t: Optional[float] = None, level: int = 0) -> np.ndarray:
    """
    Radii of a check: s_min..s_max, plus samples that resolve s -> 0 and s <= t + 2/10

    The extra samples are log-spaced on (t/100, 1/10], uniform on
    [1/10, t + 2/10] and geometric in |s - t| on both sides of the cone.
    Each refinement level doubles them and keeps the coarser ones.

    Args:
        grid: Grid spec
        t: Time; only the uniform radii when None
        level: Refinement level (0 for the base grid)

    Returns:
        Strictly increasing radii in [0, s_max]
    """
    radii = np.linspace(grid.s_min, grid.s_max, grid.s_points)
    if t is None or t <= 0:
        return radii
    scale = 2 ** level
    small = np.geomspace(0.01 * t, NEAR, SMALL_S_SAMPLE * scale + 1)[1:]
    inner = np.linspace(NEAR, t + SPHERE, INNER_SAMPLE * scale + 1)
    gaps = np.geomspace(CONE_GAP, SPHERE, CONE_SAMPLE * scale + 1)
    extra = np.concatenate([small, inner, t - gaps, t + gaps])
    extra = extra[(extra >= 0) & (extra <= grid.s_max)]
    return np.union1d(radii, extra)


def kernel_pair(p: SpaceParams, m: Symbol, t: float, grid: GridSpec, options: KernelOptions,
                threads: Optional[int] = None) -> Tuple[WaveKernel, WaveKernel]:
    """K_t on the base grid and on its refinement"""
    return tuple(wave_kernel(p, m, t, check_grid(spec, t, level), lam_grid_from(spec), options, threads)
                 for level, spec in enumerate((grid, grid.refined())))


def _sample(k: WaveKernel, values, exclusion: float) -> Sample:
    return Sample.build(k.s_grid, values, k.reliable, exclusion, k.t)


def _fit_spec(spec: EnvelopeSpec, t: float, coarse: Sample, fine: Sample):
    return [fit_region(region, t, coarse, fine, spec.target.value) for region in spec.regions]


def _metadata(m: Symbol, t: float, grid: GridSpec, options: KernelOptions, kernels) -> dict:
    meta = {
        "symbol": m.to_dict(),
        "t": t,
        "grid": grid_metadata(grid, grid.refined()),
        "exclusion_radius": options.exclusion_radius,
        "contour": options.contour,
        "unreliable": [k.unreliable_count for k in kernels],
    }
    return meta


def check_kernel_bounds(p: SpaceParams, m: Symbol, t: float, grid: Optional[GridSpec] = None,
                        spec: Optional[EnvelopeSpec] = None, options: Optional[KernelOptions] = None,
                        threads: Optional[int] = None) -> BoundReport:
    """
    Fit the pointwise envelopes of K_t and K_t' for a symbol of order -d - ε

    Args:
        p: Space parameters
        m: Symbol with ε = -b - d > 0
        t: Time; selects the large-t (t >= 1/2) or small-t regions
        grid: Base grid; the check also runs on grid.refined()
        spec: Single envelope to fit; both K and K' when None
        options: Kernel options (exclusion radius, contour mode)
        threads: Worker count

    Returns:
        BoundReport with one region per (target, case)
    """
    grid = grid or GridSpec()
    options = options or KernelOptions()
    epsilon = m.epsilon(p)
    if epsilon is None:
        raise DomainError(f"kernel envelopes need order b < -d = {-p.d}, got {m.order}")
    regime = Regime.for_time(t)
    if spec is not None:
        spec.check_time(t)
        specs = [spec]
    else:
        specs = [kernel_spec(p, regime, Target.K, epsilon), kernel_spec(p, regime, Target.KPRIME, epsilon)]

    kernels = kernel_pair(p, m, t, grid, options, threads)
    report = BoundReport("kernel", p.to_dict(), metadata=_metadata(m, t, grid, options, kernels))
    report.metadata.update({"regime": regime.value, "epsilon": epsilon})
    for envelope in specs:
        if envelope.target is Target.K:
            samples = [_sample(k, k.values, options.exclusion_radius) for k in kernels]
        else:
            samples = [_sample(k, k.derivative_profile.values, options.exclusion_radius) for k in kernels]
        report.regions.extend(_fit_spec(envelope, t, *samples))
    logger.info(f"Kernel envelopes at t={t:g} on {p.label}: {report.status.value.upper()}")
    return report


def check_Gt_envelope(p: SpaceParams, m: Symbol, t: float, grid: Optional[GridSpec] = None,
                      options: Optional[KernelOptions] = None, threads: Optional[int] = None) -> BoundReport:
    """
    Envelopes of the split kernel for symbols of order -d

    For t >= 1/2: the three-region bound of G_t and |∂_sS_t| <= e^{-ρt}|t-s|^{-2}.
    For t < 1/2: G_t on s >= 3/4, S_{1,t} against s^{-d-1} and ∂_sS_{2,t}.

    Args:
        p: Space parameters
        m: Symbol of order <= -d
        t: Time
        grid: Base grid
        options: Kernel options
        threads: Worker count

    Returns:
        BoundReport
    """
    grid = grid or GridSpec()
    options = options or KernelOptions()
    if m.order > -p.d + 1e-12:
        raise DomainError(f"split-kernel envelopes need order <= -d = {-p.d}, got {m.order}")
    regime = Regime.for_time(t)
    kernels = kernel_pair(p, m, t, grid, options, threads)
    report = BoundReport("gt", p.to_dict(), metadata=_metadata(m, t, grid, options, kernels))
    report.metadata["regime"] = regime.value
    radius = options.exclusion_radius

    if regime is Regime.LARGE_T:
        good = [_sample(k, split_kernel(k, "large_t")[1].values, radius) for k in kernels]
        singular = [_sample(k, split_kernel_derivative(k, "large_t")[0].values, radius) for k in kernels]
        report.regions.extend(_fit_spec(good_part_spec(p), t, *good))
        report.regions.extend(_fit_spec(singular_derivative_spec(p), t, *singular))
    else:
        good_spec, first_spec, second_spec = small_t_split_specs(p)
        good = [_sample(k, split_kernel(k, "small_t")[1].values, radius) for k in kernels]
        first = [_sample(k, split_small_t_singular(k, threads=threads)[0].values, radius) for k in kernels]
        second = [_sample(k, split_small_t_singular(k, derivative=True, threads=threads)[1].values, radius)
                  for k in kernels]
        report.regions.extend(_fit_spec(good_spec, t, *good))
        report.regions.extend(_fit_spec(first_spec, t, *first))
        report.regions.extend(_fit_spec(second_spec, t, *second))
    logger.info(f"Split-kernel envelopes at t={t:g} on {p.label}: {report.status.value.upper()}")
    return report


class KernelBoundsCheck(BoundCheck):
    """Pointwise envelopes of K_t and K_t'"""

    name = "kernel"

    def run(self, symbol: Optional[Symbol] = None, t: Optional[float] = None,
            t_list: Optional[List[float]] = None) -> BoundReport:
        return check_kernel_bounds(self.p, symbol or self.default_symbol(), 2.0 if t is None else t,
                                   self.config.grid, options=self.config.kernel, threads=self.threads)


class GtEnvelopeCheck(BoundCheck):
    """Envelopes of G_t and the singular part for order -d"""

    name = "gt"

    def default_symbol(self) -> Symbol:
        return make_symbol("rational_power", -self.p.d, self.p.rho)

    def run(self, symbol: Optional[Symbol] = None, t: Optional[float] = None,
            t_list: Optional[List[float]] = None) -> BoundReport:
        return check_Gt_envelope(self.p, symbol or self.default_symbol(), 1.0 if t is None else t,
                                 self.config.grid, self.config.kernel, self.threads)
