"""
Symbol registry and constructors
"""
from typing import Callable, Dict, Optional, Type

import numpy as np

from ...exceptions import DomainError
from ...models.space import SpaceParams
from .base import Symbol
from .families import CustomSymbol, GaussianSymbol, RationalPowerSymbol

# Registry of all available symbol families
SYMBOL_REGISTRY: Dict[str, Type[Symbol]] = {
    "rational_power": RationalPowerSymbol,
    "gaussian": GaussianSymbol,
    "custom": CustomSymbol,
}

# short names accepted on the command line
ALIASES = {"rational": "rational_power"}


def make_symbol(family: str, b: float, a: float, c: Optional[float] = None,
                fn: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> Symbol:
    """
    Build a symbol of a registered family

    Args:
        family: Family name (rational_power, gaussian, custom)
        b: Order
        a: Tube half-width
        c: Scale of the rational family (defaults to a + 1)
        fn: Callable of the custom family

    Returns:
        Symbol instance
    """
    name = ALIASES.get(family, family)
    if name not in SYMBOL_REGISTRY:
        raise DomainError(f"unknown symbol family {family!r}; choose from {sorted(SYMBOL_REGISTRY)}")
    if name == "rational_power":
        return RationalPowerSymbol(b, a, c)
    if name == "custom":
        if fn is None:
            raise DomainError("custom symbols need fn")
        return CustomSymbol(b, a, fn)
    return GaussianSymbol(b, a)


def parse_symbol_spec(text: str, p: SpaceParams) -> Symbol:
    """
    Parse "rational:b[:c]" or "gaussian[:b]" with tube a = ρ

    The gaussian order tag defaults to -d - 1/2.

    Args:
        text: Symbol description
        p: Space parameters

    Returns:
        Symbol instance
    """
    parts = [part.strip() for part in text.strip().split(":")]
    family = ALIASES.get(parts[0], parts[0])
    try:
        numbers = [float(part) for part in parts[1:]]
    except ValueError as e:
        raise DomainError(f"cannot parse symbol {text!r}") from e
    if family == "rational_power":
        if not 1 <= len(numbers) <= 2:
            raise DomainError(f"rational symbols read rational:b[:c], got {text!r}")
        return make_symbol(family, numbers[0], p.rho, numbers[1] if len(numbers) == 2 else None)
    if family == "gaussian":
        if len(numbers) > 1:
            raise DomainError(f"gaussian symbols read gaussian[:b], got {text!r}")
        return make_symbol(family, numbers[0] if numbers else -p.d - 0.5, p.rho)
    raise DomainError(f"unknown symbol family in {text!r}")
