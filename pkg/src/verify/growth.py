"""
Norm growth of the wave propagator on atoms
"""
import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..config import GridSpec, KernelOptions
from ..exceptions import DomainError, IntegrationError
from ..geometry.measure import ball_measure
from ..hardy.atoms import global_bump_atom, standard_bump_atom
from ..hardy.bounds import wave_h1_upper
from ..models.atom import Atom
from ..models.profile import RadialProfile
from ..models.report import GrowthReport, GrowthSeries, ReportStatus
from ..models.space import SpaceParams
from ..propagator.cutoffs import build_partition
from ..propagator.kernel import TT_MARGIN, WaveKernel, apply_Tt_to_atom, atom_profile, wave_kernel
from ..propagator.symbols import Symbol
from ..transform.operations import lp_norm
from ..transform.plan import lam_grid_from
from ..utils.analysis import log_slope, ratio_spread
from .base import BoundCheck

logger = logging.getLogger(__name__)

# allowed excess of the fitted h1 growth rate over ρ
GROWTH_SLACK = 0.15
RATIO_SPREAD_LIMIT = 3.0
# B* = B(o, t + STAR_MARGIN)
STAR_MARGIN = 1.0
KERNEL_MARGIN = 4.0
DEFAULT_TIMES = (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)

H1_NOTE = ("h1 values are upper brackets from the cutoff splitting of K_t; "
           "exact h1 norms are infima over decompositions and are not computed")


def _uniform(extent: float, step: float) -> np.ndarray:
    return np.linspace(0.0, extent, int(math.ceil(extent / step)) + 1)


def l1_split(p: SpaceParams, wave: RadialProfile, t: float) -> Dict[str, float]:
    """
    ‖T_t a‖₁ split over B* = B(o, t + 1) with the Hölder bound of the inner part

    Returns:
        Mapping with l1, l2, l1_inside, holder_bound and l1_outside
    """
    radius = t + STAR_MARGIN
    l1 = lp_norm(p, wave, 1.0)
    l2 = lp_norm(p, wave, 2.0)
    inside = lp_norm(p, wave.with_values(np.where(wave.s_grid <= radius, wave.values, 0.0)), 1.0)
    return {
        "l1": l1,
        "l2": l2,
        "l1_inside": inside,
        "holder_bound": math.sqrt(ball_measure(p, radius)) * l2,
        "l1_outside": max(l1 - inside, 0.0),
    }


def _series(label: str, quantity: str, rho: float, times: List[float], norms: List[float],
            extra: Dict[str, List[float]]) -> GrowthSeries:
    ratios = [norm / math.exp(rho * t) for t, norm in zip(times, norms)]
    return GrowthSeries(
        atom_label=label,
        t_values=list(times),
        norms=list(norms),
        slope=log_slope(times, norms) if len(times) >= 2 else math.nan,
        ratio_spread=ratio_spread(ratios) if ratios else math.nan,
        max_ratio=max(ratios) if ratios else math.nan,
        quantity=quantity,
        extra=extra,
    )


def _kernels(p: SpaceParams, m: Symbol, times: Sequence[float], radius: float, step: float,
             lam: np.ndarray, options: KernelOptions, threads: Optional[int]) -> Dict[float, WaveKernel]:
    """K_t on one grid [0, t_max + 4] shared by every time, so transform plans are reused"""
    positive = [t for t in times if t > 0]
    if not positive:
        return {}
    grid = _uniform(max(positive) + KERNEL_MARGIN, min(step, radius / 8))
    kernels = {}
    for t in positive:
        kernel = wave_kernel(p, m, t, grid, lam, options, threads)
        if not np.all(np.isfinite(kernel.values)):
            logger.warning(f"Kernel at t={t:g} is not finite; later times are dropped")
            break
        kernels[t] = kernel
    return kernels


def norm_growth_experiment(p: SpaceParams, m: Symbol, atoms: Sequence[Atom], t_list: Sequence[float],
                           grid: Optional[GridSpec] = None, options: Optional[KernelOptions] = None,
                           h1: Optional[bool] = None, threads: Optional[int] = None) -> GrowthReport:
    """
    ‖T_t a‖₁ (and an h1 upper bracket of T_t a) over a list of times

    Args:
        p: Space parameters
        m: Symbol; order -d for the L1 growth, below -d for the h1 bracket
        atoms: Radial atoms centered at the origin
        t_list: Times >= 0
        grid: Spectral grid and base step
        options: Kernel options for the h1 splitting
        h1: Also bracket the h1 norm; defaults to order < -d
        threads: Worker count

    Returns:
        GrowthReport with one L1 series per atom and, when requested, one h1 series
    """
    grid = grid or GridSpec()
    options = options or KernelOptions()
    times = sorted(float(t) for t in t_list)
    if not times or times[0] < 0:
        raise DomainError("growth experiments need a nonempty list of times t >= 0")
    if not atoms:
        raise DomainError("growth experiments need at least one atom")
    h1 = m.order < -p.d if h1 is None else h1
    if h1 and m.order >= -p.d:
        raise DomainError(f"the h1 bracket needs order b < -d = {-p.d}, got {m.order}")
    for a in atoms:
        atom_profile(a)

    lam = lam_grid_from(grid)
    step = (grid.s_max - grid.s_min) / (grid.s_points - 1)
    kernels = _kernels(p, m, times, min(a.radius for a in atoms), step, lam, options, threads) if h1 else {}
    report = GrowthReport(p.to_dict(), m.to_dict(), p.rho)
    if h1:
        report.notes.append(H1_NOTE)
    dropped = set()

    for a in atoms:
        label = a.label or f"{a.kind.value}_r{a.radius:g}"
        done, norms = [], []
        extra: Dict[str, List[float]] = {key: [] for key in ("l2", "l1_inside", "holder_bound", "l1_outside")}
        upper_t, uppers, largest = [], [], []
        for t in times:
            wave_grid = _uniform(t + a.radius + TT_MARGIN, min(step, a.radius / 20))
            try:
                wave = apply_Tt_to_atom(p, m, t, a, lam, wave_grid).real_part()
                split = l1_split(p, wave, t)
                if not all(math.isfinite(value) for value in split.values()):
                    raise IntegrationError(f"non-finite norms of T_t a at t = {t}",
                                           {"t": t, "atom": label})
            except IntegrationError as e:
                logger.warning(f"Growth of {label} stops at t={t:g}: {e}")
                dropped.update(x for x in times if x >= t)
                break
            done.append(t)
            norms.append(split["l1"])
            for key in extra:
                extra[key].append(split[key])
            if h1 and t > 0:
                if t not in kernels:
                    dropped.add(t)
                    continue
                partition = build_partition(a.radius, t, min(t + KERNEL_MARGIN, float(kernels[t].s_grid[-1])))
                total, pieces = wave_h1_upper(p, a, kernels[t], partition, split["l2"], lam)
                upper_t.append(t)
                uppers.append(total)
                largest.append(max(piece.bound for piece in pieces))
            logger.debug(f"{label} t={t:g}: ||T_t a||_1 = {split['l1']:.6g}")

        series = _series(label, "L1", p.rho, done, norms, extra)
        report.series.append(series)
        if h1:
            report.series.append(_series(label, "h1_upper", p.rho, upper_t, uppers, {"largest_piece": largest}))

    report.truncated_t = sorted(dropped)
    report.status = _status(report, p.rho)
    logger.info(f"Norm growth on {p.label}: {report.status.value.upper()}")
    return report


def _status(report: GrowthReport, rho: float) -> ReportStatus:
    status = ReportStatus.PASS
    for series in report.series:
        if len(series.t_values) < 2:
            return ReportStatus.INCONCLUSIVE
        if series.quantity == "L1" and not series.ratio_spread <= RATIO_SPREAD_LIMIT:
            report.notes.append(f"{series.atom_label}: ratio spread {series.ratio_spread:.3g} "
                                f"exceeds {RATIO_SPREAD_LIMIT:g}")
            status = ReportStatus.FAIL
        if series.quantity == "h1_upper" and not series.slope <= rho + GROWTH_SLACK:
            report.notes.append(f"{series.atom_label}: h1 growth rate {series.slope:.3g} "
                                f"exceeds rho + {GROWTH_SLACK:g}")
            status = ReportStatus.FAIL
    return status


class GrowthCheck(BoundCheck):
    """e^{ρt} growth of ‖T_t a‖₁ and of the h1 upper bracket"""

    name = "growth"

    def default_atoms(self) -> List[Atom]:
        return [standard_bump_atom(self.p, 0.5), global_bump_atom(self.p)]

    def run(self, symbol: Optional[Symbol] = None, t: Optional[float] = None,
            t_list: Optional[List[float]] = None) -> GrowthReport:
        times = list(t_list) if t_list else ([t] if t is not None else list(DEFAULT_TIMES))
        return norm_growth_experiment(self.p, symbol or self.default_symbol(), self.default_atoms(), times,
                                      self.config.grid, self.config.kernel, threads=self.threads)
