"""
Base symbol interface for wave multipliers m(λ)
"""
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from ...exceptions import DomainError, EvennessError
from ...models.space import SpaceParams
from ...utils.analysis import central_derivative

EVENNESS_TOLERANCE = 1e-12


class SymbolFamily(Enum):
    """Registered symbol families"""
    RATIONAL_POWER = "rational_power"
    GAUSSIAN = "gaussian"
    CUSTOM = "custom"


def evenness_points(tube: float) -> np.ndarray:
    """Real and complex test points inside the tube |Im λ| <= tube"""
    re = np.array([0.3, 1.0, 2.7, 7.5, 19.0])
    im = np.array([0.0, 0.5 * tube, tube]) if tube > 0 else np.array([0.0])
    return (re[:, None] + 1j * im[None, :]).ravel()


class Symbol(ABC):
    """Even symbol in the class S^b_a, analytic on the tube |Im λ| <= a"""

    family: SymbolFamily

    def __init__(self, order: float, tube: float):
        """
        Initialize the symbol.

        Args:
            order: Order b of the class S^b_a
            tube: Half-width a of the analyticity tube
        """
        if tube < 0:
            raise DomainError(f"tube half-width must be nonnegative, got {tube}")
        self.order = float(order)
        self.tube = float(tube)

    @abstractmethod
    def evaluate(self, lam: np.ndarray) -> np.ndarray:
        """
        Values m(λ) for real or complex λ in the tube.

        Args:
            lam: Array of spectral parameters

        Returns:
            Array of symbol values
        """
        pass

    def __call__(self, lam) -> np.ndarray:
        lam = np.asarray(lam)
        if not np.iscomplexobj(lam):
            lam = lam.astype(float)
        return self.evaluate(lam)

    def derivative(self, lam, order: int = 1) -> np.ndarray:
        """∂_λ^order m by central finite differences; subclasses override with exact forms"""
        return central_derivative(self.evaluate, np.asarray(lam, dtype=complex), order)

    @property
    def is_bounded(self) -> bool:
        """Bounded on the real line (order <= 0)"""
        return self.order <= 0

    def epsilon(self, p: SpaceParams) -> Optional[float]:
        """ε = -b - d when b < -d, else None"""
        value = -self.order - p.d
        return value if value > 0 else None

    def check_evenness(self, points: Optional[np.ndarray] = None) -> float:
        """
        Largest relative asymmetry |m(λ) - m(-λ)| on test points

        Raises:
            EvennessError: asymmetry above EVENNESS_TOLERANCE
        """
        points = evenness_points(self.tube) if points is None else np.asarray(points, dtype=complex)
        plus = np.asarray(self.evaluate(points))
        minus = np.asarray(self.evaluate(-points))
        scale = np.maximum(np.abs(plus), 1.0)
        worst = float(np.max(np.abs(plus - minus) / scale))
        if worst > EVENNESS_TOLERANCE:
            raise EvennessError(f"{self.family.value} symbol is not even: asymmetry {worst:.3e}")
        return worst

    def symbol_constants(self, lam_re, levels: int = 3) -> Dict[int, float]:
        """
        C_α = max |∂^α m(λ)| / (1 + |Re λ|)^{b - α} for α = 0, 1, 2 on the tube

        Args:
            lam_re: Real parts to scan
            levels: Number of imaginary levels in [0, a]

        Returns:
            Mapping α -> fitted constant
        """
        lam_re = np.asarray(lam_re, dtype=float)
        heights = np.linspace(0.0, self.tube, levels) if self.tube > 0 else np.array([0.0])
        lam = (lam_re[:, None] + 1j * heights[None, :]).ravel()
        weight = 1.0 + np.abs(lam.real)
        constants = {}
        for alpha in (0, 1, 2):
            values = self.evaluate(lam) if alpha == 0 else self.derivative(lam, alpha)
            constants[alpha] = float(np.max(np.abs(values) / weight ** (self.order - alpha)))
        return constants

    def sup_norm(self, lam_grid) -> float:
        """max |m| over a real grid"""
        return float(np.max(np.abs(self.evaluate(np.asarray(lam_grid, dtype=float)))))

    def describe(self) -> Dict[str, Any]:
        """Family-specific parameters"""
        return {}

    def to_dict(self) -> Dict[str, Any]:
        data = {"family": self.family.value, "order": self.order, "tube": self.tube}
        data.update(self.describe())
        return data

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.to_dict().items() if k != "family")
        return f"{type(self).__name__}({params})"
