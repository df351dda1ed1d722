"""
Local Hardy space h1: atoms, constructive decompositions and norm brackets
"""
from .atoms import global_bump_atom, standard_bump_atom, step_atom, validate_atom
from .bounds import ConvolutionBound, H1Bracket, conv_atom_bound, h1_bracket, wave_h1_upper
from .decompose import decompose_annulus, decompose_ball, validate_decomposition

__all__ = [
    "global_bump_atom",
    "standard_bump_atom",
    "step_atom",
    "validate_atom",
    "ConvolutionBound",
    "H1Bracket",
    "conv_atom_bound",
    "h1_bracket",
    "wave_h1_upper",
    "decompose_annulus",
    "decompose_ball",
    "validate_decomposition",
]
