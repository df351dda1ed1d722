"""
Symbol classes S^b_a for wave multipliers
"""
from .base import Symbol, SymbolFamily
from .families import CustomSymbol, GaussianSymbol, RationalPowerSymbol
from .registry import SYMBOL_REGISTRY, make_symbol, parse_symbol_spec

__all__ = [
    "Symbol",
    "SymbolFamily",
    "CustomSymbol",
    "GaussianSymbol",
    "RationalPowerSymbol",
    "SYMBOL_REGISTRY",
    "make_symbol",
    "parse_symbol_spec",
]
