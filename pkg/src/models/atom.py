"""
Data models for h1-atoms and atomic decompositions
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from ..exceptions import DomainError
from .profile import RadialProfile
from .space import ModelPoint


class AtomKind(Enum):
    """Kinds of h1-atoms"""
    STANDARD = "standard"
    GLOBAL = "global"


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Nested indicators F(s) = sum_k heights[k] * 1[s <= radii[k]]"""
    radii: np.ndarray
    heights: np.ndarray

    def __post_init__(self):
        radii = np.atleast_1d(np.asarray(self.radii, dtype=float))
        heights = np.atleast_1d(np.asarray(self.heights, dtype=float))
        if radii.shape != heights.shape or np.any(radii <= 0):
            raise DomainError("step function needs matching positive radii and heights")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "heights", heights)

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        out = np.zeros(s.shape)
        for radius, height in zip(self.radii, self.heights):
            out = out + height * (s <= radius)
        return out


@dataclass(frozen=True, eq=False)
class Atom:
    """
    A standard or global h1-atom

    Exactly one representation is set: a radial profile or a step function
    (both in the distance to the center), or a function of hyperboloid
    coordinates for atoms built on model balls.
    """
    kind: AtomKind
    radius: float
    profile: Optional[RadialProfile] = None
    steps: Optional[StepFunction] = None
    function: Optional[Callable[[np.ndarray], np.ndarray]] = None
    center: Optional[ModelPoint] = None
    label: str = ""

    def __post_init__(self):
        given = [x is not None for x in (self.profile, self.steps, self.function)]
        if sum(given) != 1:
            raise DomainError("an atom needs exactly one of profile, steps, function")
        if not 0 < self.radius <= 1 + 1e-12:
            raise DomainError(f"atom radius must lie in (0, 1], got {self.radius}")
        if self.function is not None and self.center is None:
            raise DomainError("model-function atoms need a center")

    @property
    def is_radial(self) -> bool:
        """Radial about the origin (the only case the propagator accepts)"""
        if self.function is not None:
            return False
        return self.center is None or not np.any(self.center.coords[1:])

    def radial_values(self, s) -> np.ndarray:
        """Values as a function of the distance to the center"""
        if self.profile is not None:
            return self.profile.evaluate(s)
        if self.steps is not None:
            return self.steps(s)
        raise DomainError("model-function atoms have no radial representation")

    def to_dict(self) -> Dict[str, Any]:
        if self.profile is not None:
            representation = "profile"
        elif self.steps is not None:
            representation = "steps"
        else:
            representation = "model"
        return {
            "kind": self.kind.value,
            "radius": self.radius,
            "center": None if self.center is None else self.center.coords.tolist(),
            "representation": representation,
            "label": self.label,
        }


@dataclass
class AtomValidation:
    """Outcome of checking an atom against the support, size and cancellation conditions"""
    support_ok: bool
    size_ok: bool
    cancellation_ok: bool
    l2_norm: float
    size_bound: float
    integral: float
    l1_norm: float
    support_excess: float = 0.0
    method: str = "quadrature"
    error_estimate: float = 0.0

    @property
    def passed(self) -> bool:
        return self.support_ok and self.size_ok and self.cancellation_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "support_ok": self.support_ok,
            "size_ok": self.size_ok,
            "cancellation_ok": self.cancellation_ok,
            "l2_norm": self.l2_norm,
            "size_bound": self.size_bound,
            "integral": self.integral,
            "l1_norm": self.l1_norm,
            "support_excess": self.support_excess,
            "method": self.method,
            "error_estimate": self.error_estimate,
        }


@dataclass
class DecompositionTerm:
    coefficient: float
    atom: Atom
    level: int = 0
    index: int = 0

    def to_dict(self) -> Dict[str, Any]:
        entry = self.atom.to_dict()
        return {
            "c": self.coefficient,
            "center": entry["center"],
            "radius": entry["radius"],
            "kind": entry["kind"],
            "level": self.level,
            "index": self.index,
        }


@dataclass
class AtomicDecomposition:
    """f = sum_j c_j a_j with total sum_j |c_j|"""
    terms: List[DecompositionTerm] = field(default_factory=list)
    constants: Dict[str, float] = field(default_factory=dict)
    reconstruction_error: float = 0.0
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def total(self) -> float:
        # fixed summation order
        return float(sum(abs(term.coefficient) for term in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def atoms(self) -> Sequence[Atom]:
        return [term.atom for term in self.terms]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "terms": [term.to_dict() for term in self.terms],
            "total": self.total,
            "constants": dict(self.constants),
            "reconstruction_error": self.reconstruction_error,
            "meta": dict(self.meta),
        }
