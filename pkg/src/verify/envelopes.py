"""
Envelope specifications for the pointwise kernel estimates
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List

import numpy as np

from ..exceptions import DomainError, RegimeMismatchError
from ..models.space import SpaceParams

# boundary between the large-t and small-t regimes
LARGE_T = 0.5
NEAR = 0.1
SPHERE = 0.2


class Regime(Enum):
    LARGE_T = "large_t"
    SMALL_T = "small_t"

    @classmethod
    def for_time(cls, t: float) -> "Regime":
        return cls.LARGE_T if t >= LARGE_T else cls.SMALL_T


class Target(Enum):
    """Quantity whose absolute value is compared with the envelope"""
    K = "K"
    KPRIME = "Kprime"
    GT = "Gt"
    ST_DERIV = "St_deriv"
    S1 = "S1"
    S2_DERIV = "S2_deriv"


Mask = Callable[[np.ndarray, float], np.ndarray]
Formula = Callable[[np.ndarray, float], np.ndarray]


@dataclass
class EnvelopeRegion:
    """One case of a piecewise estimate: where it applies and its right-hand side"""
    name: str
    label: str
    mask: Mask
    formula: Formula

    def envelope(self, s, t: float) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return self.formula(s, t)


@dataclass
class EnvelopeSpec:
    """Piecewise envelope of one target in one regime"""
    regime: Regime
    target: Target
    epsilon: float
    regions: List[EnvelopeRegion] = field(default_factory=list)

    def check_time(self, t: float) -> None:
        if Regime.for_time(t) is not self.regime:
            raise RegimeMismatchError(f"{self.regime.value} envelope requested at t = {t}")

    def region(self, name: str) -> EnvelopeRegion:
        for region in self.regions:
            if region.name == name:
                return region
        raise KeyError(name)

    def to_dict(self):
        return {
            "regime": self.regime.value,
            "target": self.target.value,
            "epsilon": self.epsilon,
            "regions": [{"name": region.name, "envelope": region.label} for region in self.regions],
        }


def integer_part(epsilon: float) -> int:
    """[ε] in the far-field exponents -2 + [ε]"""
    return int(math.floor(epsilon))


def _gap(s, t):
    return np.abs(t - s)


def large_t_spec(p: SpaceParams, epsilon: float, target: Target = Target.K) -> EnvelopeSpec:
    """
    Four-region envelope of K_t or K_t' for t >= 1/2

    Regions: s <= 1/10, 1/10 < s < t - 2/10, |s - t| <= 2/10, s > t + 2/10.
    """
    rho, d = p.rho, p.d
    far = -2 + integer_part(epsilon)
    if target is Target.K:
        small_power, sphere_power = -d - 1 + epsilon, -1 + epsilon
    elif target is Target.KPRIME:
        small_power, sphere_power = -d - 2 + epsilon, -2 + epsilon
    else:
        raise DomainError(f"large-t kernel envelopes cover K and Kprime, not {target.value}")
    regions = [
        EnvelopeRegion("small_s", f"s^({small_power:g})",
                       lambda s, t: s <= NEAR,
                       lambda s, t: s ** small_power),
        EnvelopeRegion("inner", f"e^(-rho s)|t-s|^({far})",
                       lambda s, t: (s > NEAR) & (s < t - SPHERE),
                       lambda s, t: np.exp(-rho * s) * _gap(s, t) ** far),
        EnvelopeRegion("sphere", f"e^(-rho t)|t-s|^({sphere_power:g})",
                       lambda s, t: _gap(s, t) <= SPHERE,
                       lambda s, t: math.exp(-rho * t) * _gap(s, t) ** sphere_power),
        EnvelopeRegion("outer", f"e^(rho t)e^(-2 rho s)|t-s|^({far})",
                       lambda s, t: s > t + SPHERE,
                       lambda s, t: np.exp(rho * t - 2 * rho * s) * _gap(s, t) ** far),
    ]
    return EnvelopeSpec(Regime.LARGE_T, target, epsilon, regions)


def small_t_spec(p: SpaceParams, epsilon: float, target: Target = Target.K) -> EnvelopeSpec:
    """Two-region envelope of K_t or K_t' for t < 1/2: s < 1 and s >= 1"""
    rho, d = p.rho, p.d
    far = -2 + integer_part(epsilon)
    if target is Target.K:
        def near(s, t):
            return s ** (-d - 1 + epsilon) + s ** (-d) * _gap(s, t) ** (-1 + epsilon)
        label = f"s^({-d - 1 + epsilon:g}) + s^({-d:g})|t-s|^({-1 + epsilon:g})"
    elif target is Target.KPRIME:
        def near(s, t):
            gap = _gap(s, t)
            return (s ** (-d - 2 + epsilon) + s ** (-d) * gap ** (-2 + epsilon)
                    + s ** (-d - 1) * gap ** (-1 + epsilon))
        label = (f"s^({-d - 2 + epsilon:g}) + s^({-d:g})|t-s|^({-2 + epsilon:g}) "
                 f"+ s^({-d - 1:g})|t-s|^({-1 + epsilon:g})")
    else:
        raise DomainError(f"small-t kernel envelopes cover K and Kprime, not {target.value}")
    regions = [
        EnvelopeRegion("near", label, lambda s, t: s < 1.0, near),
        EnvelopeRegion("far", f"e^(-2 rho s)|t-s|^({far})",
                       lambda s, t: s >= 1.0,
                       lambda s, t: np.exp(-2 * rho * s) * _gap(s, t) ** far),
    ]
    return EnvelopeSpec(Regime.SMALL_T, target, epsilon, regions)


def good_part_spec(p: SpaceParams) -> EnvelopeSpec:
    """Three-region envelope of G_t for symbols of order -d and t >= 1/2"""
    rho, d = p.rho, p.d
    regions = [
        EnvelopeRegion("small_s", f"s^({-d - 1:g})",
                       lambda s, t: s <= NEAR,
                       lambda s, t: s ** (-d - 1)),
        EnvelopeRegion("inner", "e^(-rho s)|t-s|^(-2)",
                       lambda s, t: (s > NEAR) & (s <= t - NEAR),
                       lambda s, t: np.exp(-rho * s) * _gap(s, t) ** -2),
        EnvelopeRegion("outer", "e^(rho t)e^(-2 rho s)|t-s|^(-2)",
                       lambda s, t: s >= t + NEAR,
                       lambda s, t: np.exp(rho * t - 2 * rho * s) * _gap(s, t) ** -2),
    ]
    return EnvelopeSpec(Regime.LARGE_T, Target.GT, 0.0, regions)


def singular_derivative_spec(p: SpaceParams) -> EnvelopeSpec:
    """|∂_sS_t| <= e^{-ρt}|t-s|^{-2} on the band |s - t| <= 2/10"""
    rho = p.rho
    regions = [
        EnvelopeRegion("sphere", "e^(-rho t)|t-s|^(-2)",
                       lambda s, t: _gap(s, t) <= SPHERE,
                       lambda s, t: math.exp(-rho * t) * _gap(s, t) ** -2),
    ]
    return EnvelopeSpec(Regime.LARGE_T, Target.ST_DERIV, 0.0, regions)


def small_t_split_specs(p: SpaceParams):
    """Envelopes of G_t (s >= 3/4), S_{1,t} and ∂_sS_{2,t} (s < 1) for t < 1/2"""
    rho, d = p.rho, p.d
    good = EnvelopeSpec(Regime.SMALL_T, Target.GT, 0.0, [
        EnvelopeRegion("far", "e^(-2 rho s)|t-s|^(-2)",
                       lambda s, t: s >= 0.75,
                       lambda s, t: np.exp(-2 * rho * s) * _gap(s, t) ** -2),
    ])
    first = EnvelopeSpec(Regime.SMALL_T, Target.S1, 0.0, [
        EnvelopeRegion("near", f"s^({-d - 1:g})",
                       lambda s, t: s < 1.0,
                       lambda s, t: s ** (-d - 1)),
    ])
    second = EnvelopeSpec(Regime.SMALL_T, Target.S2_DERIV, 0.0, [
        EnvelopeRegion("near", f"s^({-d:g})(|t-s|^(-2) + s|t-s|^(-1))",
                       lambda s, t: s < 1.0,
                       lambda s, t: s ** (-d) * (_gap(s, t) ** -2 + s * _gap(s, t) ** -1)),
    ])
    return good, first, second


def kernel_spec(p: SpaceParams, regime, target, epsilon: float) -> EnvelopeSpec:
    """Envelope of K or Kprime for a regime given by name or enum"""
    regime = regime if isinstance(regime, Regime) else Regime(regime)
    target = target if isinstance(target, Target) else Target(target)
    if regime is Regime.LARGE_T:
        return large_t_spec(p, epsilon, target)
    return small_t_spec(p, epsilon, target)
