"""
Data models for spectral parameters and spherical-function values
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Union

from ..exceptions import DomainError


@dataclass(frozen=True)
class ComplexFrequency:
    """Spectral parameter λ = re + i im"""
    re: float
    im: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError("spectral parameter must be finite")

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0.0

    @classmethod
    def coerce(cls, lam: Union["ComplexFrequency", complex, float]) -> "ComplexFrequency":
        if isinstance(lam, ComplexFrequency):
            return lam
        lam = complex(lam)
        return cls(lam.real, lam.imag)

    def check_tube(self, half_width: float) -> None:
        """Raise unless |Im λ| <= half_width"""
        if abs(self.im) > half_width + 1e-12:
            raise DomainError(f"|Im λ| = {abs(self.im)} exceeds the tube half-width {half_width}")


class SphericalMethod(Enum):
    """How a spherical-function value was computed"""
    SERIES = "series"
    ODE = "ode"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class SphericalValue:
    """φ_λ(s) with its s-derivative"""
    value: complex
    s_derivative: complex
    method: SphericalMethod
    deriv: int = 0

    @property
    def requested(self) -> complex:
        """φ_λ(s) when deriv is 0, ∂_sφ_λ(s) when it is 1"""
        return self.s_derivative if self.deriv else self.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "s_derivative": self.s_derivative,
            "method": self.method.value,
            "deriv": self.deriv,
        }
