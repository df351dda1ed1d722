"""
Data models for the symmetric space and its radial regions
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np
from scipy.special import gammaln

from ..exceptions import DomainError, InvalidPointError

MODEL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SpaceParams:
    """Root multiplicities of a rank-one symmetric space and derived constants"""
    m1: int
    m2: int = 0

    def __post_init__(self):
        if int(self.m1) != self.m1 or self.m1 < 1:
            raise DomainError(f"m1 must be a positive integer, got {self.m1}")
        if int(self.m2) != self.m2 or self.m2 < 0:
            raise DomainError(f"m2 must be a nonnegative integer, got {self.m2}")

    @property
    def n(self) -> int:
        return self.m1 + self.m2 + 1

    @property
    def rho(self) -> float:
        return (self.m1 + 2 * self.m2) / 2

    @property
    def d(self) -> float:
        return (self.m1 + self.m2) / 2

    @property
    def rho_prime(self) -> float:
        return self.rho + 0.1

    # Jacobi parameters
    @property
    def alpha(self) -> float:
        return (self.m1 + self.m2 - 1) / 2

    @property
    def beta(self) -> float:
        return (self.m2 - 1) / 2

    @property
    def sphere_area(self) -> float:
        """Area ω_{n-1} = 2π^{n/2}/Γ(n/2) of the unit sphere in R^n"""
        return 2 * math.exp(0.5 * self.n * math.log(math.pi) - gammaln(0.5 * self.n))

    @property
    def has_model(self) -> bool:
        """Whether the hyperboloid point model is available (real hyperbolic space)"""
        return self.m2 == 0

    @property
    def label(self) -> str:
        if self.m2 == 0:
            return f"H{self.n}"
        return f"m1={self.m1},m2={self.m2}"

    @classmethod
    def parse(cls, text: str) -> "SpaceParams":
        """
        Parse a space description such as "m1=2,m2=0" or "H3"

        Args:
            text: Space description

        Returns:
            SpaceParams instance
        """
        text = text.strip()
        if text.upper().startswith("H") and text[1:].isdigit():
            return cls(int(text[1:]) - 1, 0)
        values: Dict[str, int] = {}
        for part in text.split(","):
            key, sep, value = part.partition("=")
            if not sep or key.strip() not in ("m1", "m2"):
                raise DomainError(f"cannot parse space {text!r}")
            try:
                values[key.strip()] = int(value)
            except ValueError as e:
                raise DomainError(f"cannot parse space {text!r}") from e
        if "m1" not in values:
            raise DomainError(f"space {text!r} lacks m1")
        return cls(values["m1"], values.get("m2", 0))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SpaceParams":
        return cls(int(data["m1"]), int(data.get("m2", 0)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m1": self.m1,
            "m2": self.m2,
            "n": self.n,
            "rho": self.rho,
            "d": self.d,
            "rho_prime": self.rho_prime,
        }


@dataclass(frozen=True)
class Annulus:
    """Radial shell A_{R-r}^{R+r}; a ball B(o, R+r) when R <= r"""
    R: float
    r: float

    def __post_init__(self):
        if self.R < 0:
            raise DomainError(f"annulus center radius must be nonnegative, got {self.R}")
        # r = 0 is only allowed for the single point R = 0
        if self.r < 0 or (self.r == 0 and self.R > 0):
            raise DomainError(f"annulus half-width must be positive, got {self.r}")

    @property
    def lower(self) -> float:
        return max(self.R - self.r, 0.0)

    @property
    def upper(self) -> float:
        return self.R + self.r

    @property
    def is_ball(self) -> bool:
        return self.R <= self.r

    @classmethod
    def ball(cls, radius: float) -> "Annulus":
        """Ball B(o, radius) written as a degenerate annulus"""
        return cls(radius / 2, radius / 2)

    def contains(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return (s >= self.lower) & (s <= self.upper)

    def to_dict(self) -> Dict[str, Any]:
        return {"R": self.R, "r": self.r, "lower": self.lower, "upper": self.upper}


@dataclass(frozen=True, eq=False)
class ModelPoint:
    """Point on the upper sheet of the hyperboloid <x, x> = 1 in R^{n+1}"""
    coords: np.ndarray = field(compare=False)

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", coords)
        if coords.ndim != 1 or coords.size < 2:
            raise InvalidPointError("coordinates must be a vector of length n+1")
        form = coords[0] ** 2 - float(np.dot(coords[1:], coords[1:]))
        if abs(form - 1.0) > MODEL_TOLERANCE * max(1.0, coords[0] ** 2) or coords[0] < 1 - MODEL_TOLERANCE:
            raise InvalidPointError(f"point is not on the hyperboloid: <x,x> = {form}")

    @property
    def dimension(self) -> int:
        return self.coords.size - 1

    @classmethod
    def origin(cls, n: int) -> "ModelPoint":
        coords = np.zeros(n + 1)
        coords[0] = 1.0
        return cls(coords)

    @classmethod
    def from_polar(cls, s: float, direction) -> "ModelPoint":
        """Point at distance s from the origin in the given unit direction of R^n"""
        direction = np.asarray(direction, dtype=float)
        direction = direction / np.linalg.norm(direction)
        return cls(np.concatenate(([math.cosh(s)], math.sinh(s) * direction)))

    def __eq__(self, other) -> bool:
        return isinstance(other, ModelPoint) and np.array_equal(self.coords, other.coords)

    def __hash__(self) -> int:
        return hash(self.coords.tobytes())


@dataclass(frozen=True, eq=False)
class Net:
    """Maximal r/3-separated set of centers covering a region of the hyperboloid"""
    centers: np.ndarray
    mesh: float
    region: Annulus
    samples: np.ndarray = field(default_factory=lambda: np.empty((0, 0)))
    separation: float = math.inf
    covering_radius: float = 0.0
    seed: int = 0

    @property
    def size(self) -> int:
        return int(self.centers.shape[0])

    @property
    def points(self):
        return [ModelPoint(row) for row in self.centers]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "mesh": self.mesh,
            "region": self.region.to_dict(),
            "separation": self.separation if math.isfinite(self.separation) else None,
            "covering_radius": self.covering_radius,
            "seed": self.seed,
        }
