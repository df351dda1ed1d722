"""
Data models for verification reports
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class ReportStatus(Enum):
    """Verdict of a numerical check"""
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @property
    def exit_code(self) -> int:
        return {ReportStatus.PASS: 0, ReportStatus.FAIL: 2, ReportStatus.INCONCLUSIVE: 3}[self]


def _finite_or_none(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


@dataclass
class RegionResult:
    """Fitted constant of one envelope on one region at two resolutions"""
    name: str
    envelope: str
    constant: float
    constant_fine: float
    n_points: int
    n_unreliable: int = 0
    n_excluded: int = 0
    status: ReportStatus = ReportStatus.PASS
    note: str = ""

    @property
    def stability(self) -> float:
        """max(C_fine/C_coarse, C_coarse/C_fine); 1 when both vanish"""
        a, b = self.constant, self.constant_fine
        if not (math.isfinite(a) and math.isfinite(b)):
            return math.inf
        if a == 0 and b == 0:
            return 1.0
        if a == 0 or b == 0:
            return math.inf
        return max(a / b, b / a)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "region": self.name,
            "envelope": self.envelope,
            "constant": _finite_or_none(self.constant),
            "constant_fine": _finite_or_none(self.constant_fine),
            "stability": _finite_or_none(self.stability),
            "n_points": self.n_points,
            "n_unreliable": self.n_unreliable,
            "n_excluded": self.n_excluded,
            "status": self.status.value,
            "note": self.note,
        }


@dataclass
class BoundReport:
    """Per-region fitted constants of a numerically checked inequality"""
    check: str
    space: Dict[str, Any]
    regions: List[RegionResult] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> ReportStatus:
        statuses = [region.status for region in self.regions]
        if ReportStatus.FAIL in statuses:
            return ReportStatus.FAIL
        if ReportStatus.INCONCLUSIVE in statuses or not statuses:
            return ReportStatus.INCONCLUSIVE
        return ReportStatus.PASS

    @property
    def passed(self) -> bool:
        return self.status is ReportStatus.PASS

    def region(self, name: str) -> RegionResult:
        for region in self.regions:
            if region.name == name:
                return region
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "status": self.status.value,
            "space": dict(self.space),
            "regions": [region.to_dict() for region in self.regions],
            "metadata": dict(self.metadata),
        }


@dataclass
class GrowthSeries:
    """Norms of T_t a over a list of times for one atom"""
    atom_label: str
    t_values: List[float]
    norms: List[float]
    slope: float
    ratio_spread: float
    max_ratio: float
    quantity: str = "L1"
    extra: Dict[str, List[float]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "atom": self.atom_label,
            "quantity": self.quantity,
            "t": list(self.t_values),
            "norms": list(self.norms),
            "slope": _finite_or_none(self.slope),
            "ratio_spread": _finite_or_none(self.ratio_spread),
            "max_ratio": _finite_or_none(self.max_ratio),
            "extra": {key: list(values) for key, values in self.extra.items()},
        }


@dataclass
class GrowthReport:
    """Outcome of the e^{ρt} norm-growth experiment"""
    space: Dict[str, Any]
    symbol: Dict[str, Any]
    rho: float
    series: List[GrowthSeries] = field(default_factory=list)
    truncated_t: List[float] = field(default_factory=list)
    status: ReportStatus = ReportStatus.PASS
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": "growth",
            "status": self.status.value,
            "space": dict(self.space),
            "symbol": dict(self.symbol),
            "rho": self.rho,
            "series": [item.to_dict() for item in self.series],
            "truncated_t": list(self.truncated_t),
            "notes": list(self.notes),
        }
