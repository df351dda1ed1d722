"""
Base check interface and envelope fitting shared by the checks
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from ..config import GridSpec, RunConfig
from ..models.report import BoundReport, GrowthReport, RegionResult, ReportStatus
from ..models.space import SpaceParams
from ..propagator.symbols import Symbol, make_symbol
from ..utils.analysis import fitted_constant
from .envelopes import EnvelopeRegion

logger = logging.getLogger(__name__)

# refinement may change a fitted constant by at most this factor
STABILITY_LIMIT = 2.0
# share of unreliable points in a region that makes it inconclusive
UNRELIABLE_SHARE = 0.01


@dataclass
class Sample:
    """Measured |values| on a grid with reliability and exclusion masks"""
    s: np.ndarray
    measured: np.ndarray
    reliable: np.ndarray
    excluded: np.ndarray

    @classmethod
    def build(cls, s, measured, reliable=None, exclusion: float = 0.0, t: Optional[float] = None) -> "Sample":
        s = np.asarray(s, dtype=float)
        measured = np.abs(np.asarray(measured))
        reliable = np.ones(s.size, dtype=bool) if reliable is None else np.asarray(reliable, dtype=bool)
        excluded = s < exclusion
        if t is not None:
            excluded = excluded | (np.abs(s - t) < exclusion)
        return cls(s, measured, reliable, excluded)


def fit_region(region: EnvelopeRegion, t: float, coarse: Sample, fine: Sample, prefix: str = "") -> RegionResult:
    """
    Fitted constants of one envelope region at two resolutions

    Args:
        region: Envelope region
        t: Time entering the envelope
        coarse: Samples on the base grid
        fine: Samples on the refined grid
        prefix: Target name prepended to the region name

    Returns:
        RegionResult with status PASS, FAIL or INCONCLUSIVE
    """
    constants = []
    counts = []
    worst_share = 0.0
    for sample in (coarse, fine):
        inside = np.asarray(region.mask(sample.s, t), dtype=bool)
        candidates = inside & ~sample.excluded
        usable = candidates & sample.reliable
        envelope = region.envelope(sample.s, t)
        constants.append(fitted_constant(sample.measured, envelope, usable))
        unreliable = int(np.count_nonzero(candidates & ~sample.reliable))
        if np.count_nonzero(candidates):
            worst_share = max(worst_share, unreliable / np.count_nonzero(candidates))
        counts.append((int(np.count_nonzero(candidates)), unreliable,
                       int(np.count_nonzero(inside & sample.excluded))))

    name = f"{prefix}:{region.name}" if prefix else region.name
    n_points, n_unreliable, n_excluded = counts[0]
    result = RegionResult(name, region.label, constants[0], constants[1],
                          n_points, n_unreliable, n_excluded)
    if n_points == 0:
        result.note = "no grid points in region"
    elif worst_share > UNRELIABLE_SHARE:
        result.status = ReportStatus.INCONCLUSIVE
        result.note = f"{worst_share:.1%} of the points are unreliable"
    elif result.stability > STABILITY_LIMIT:
        result.status = ReportStatus.FAIL
        result.note = f"refinement changes the constant by {result.stability:.3g}x"
    logger.debug(f"Region {name}: C* = {constants[0]:.4g} / {constants[1]:.4g}, {result.status.value}")
    return result


def grid_metadata(coarse: GridSpec, fine: GridSpec) -> dict:
    return {"coarse": coarse.model_dump(), "fine": fine.model_dump()}


class BoundCheck(ABC):
    """Base class for all verification checks"""

    name = "base"

    def __init__(self, p: SpaceParams, config: Optional[RunConfig] = None, threads: Optional[int] = None):
        """
        Initialize the check.

        Args:
            p: Space parameters
            config: Run configuration (grids, tolerances, kernel options, seed)
            threads: Worker count; falls back to the configuration
        """
        self.p = p
        self.config = config or RunConfig()
        self.threads = threads if threads is not None else self.config.threads

    def default_symbol(self) -> Symbol:
        """Rational symbol of order -d - 1/2 on the tube |Im λ| <= ρ"""
        return make_symbol("rational_power", -self.p.d - 0.5, self.p.rho)

    @abstractmethod
    def run(self, symbol: Optional[Symbol] = None, t: Optional[float] = None,
            t_list: Optional[List[float]] = None) -> Union[BoundReport, GrowthReport]:
        """
        Run the check.

        Args:
            symbol: Symbol under test (the check's default when None)
            t: Time for single-time checks
            t_list: Times for the growth experiment

        Returns:
            A report with a status and a to_dict() payload
        """
        pass
