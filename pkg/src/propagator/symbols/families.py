"""
Concrete symbol families: rational powers, Gaussians and user callables
"""
import logging
from typing import Any, Callable, Dict, Optional

import numpy as np

from ...exceptions import AnalyticityError, DomainError
from .base import Symbol, SymbolFamily

logger = logging.getLogger(__name__)


class RationalPowerSymbol(Symbol):
    """m(λ) = (c² + λ²)^{b/2}, analytic on |Im λ| < c"""

    family = SymbolFamily.RATIONAL_POWER

    def __init__(self, order: float, tube: float, scale: Optional[float] = None):
        super().__init__(order, tube)
        self.scale = float(tube + 1.0 if scale is None else scale)
        if not self.scale > self.tube:
            raise AnalyticityError(
                f"branch points ±i{self.scale} lie on the tube |Im λ| <= {self.tube}; need c > a")

    def _base(self, lam):
        return self.scale ** 2 + np.asarray(lam) ** 2

    def evaluate(self, lam):
        lam = np.asarray(lam)
        if np.iscomplexobj(lam):
            return np.power(self._base(lam).astype(complex), self.order / 2)
        return np.power(self._base(lam), self.order / 2)

    def derivative(self, lam, order: int = 1):
        lam = np.asarray(lam, dtype=complex)
        base = self._base(lam)
        b = self.order
        if order == 0:
            return np.power(base, b / 2)
        if order == 1:
            return b * lam * np.power(base, b / 2 - 1)
        if order == 2:
            return b * np.power(base, b / 2 - 1) + b * (b - 2) * lam ** 2 * np.power(base, b / 2 - 2)
        return super().derivative(lam, order)

    def describe(self) -> Dict[str, Any]:
        return {"scale": self.scale}


class GaussianSymbol(Symbol):
    """m(λ) = e^{-λ²}; lies in every class, the order is a tag for the checks"""

    family = SymbolFamily.GAUSSIAN

    def evaluate(self, lam):
        return np.exp(-np.asarray(lam) ** 2)

    def derivative(self, lam, order: int = 1):
        lam = np.asarray(lam, dtype=complex)
        value = np.exp(-lam ** 2)
        if order == 0:
            return value
        if order == 1:
            return -2 * lam * value
        if order == 2:
            return (4 * lam ** 2 - 2) * value
        return super().derivative(lam, order)


class CustomSymbol(Symbol):
    """User-supplied vectorized callable, checked for evenness on construction"""

    family = SymbolFamily.CUSTOM

    def __init__(self, order: float, tube: float, fn: Callable[[np.ndarray], np.ndarray], name: str = "custom"):
        if not callable(fn):
            raise DomainError("custom symbols need a callable")
        super().__init__(order, tube)
        self.fn = fn
        self.name = name
        self.check_evenness()

    def evaluate(self, lam):
        return np.asarray(self.fn(np.asarray(lam)))

    def describe(self) -> Dict[str, Any]:
        return {"name": self.name}
