"""
Wave propagator: symbols, oscillatory quadrature, kernels and cutoffs
"""
from .cutoffs import CutoffFamily, CutoffKind, CutoffPartition, RadialCutoff, build_partition, cutoff_family
from .kernel import (WaveKernel, apply_Tt_to_atom, split_kernel, split_kernel_derivative,
                     split_small_t_singular, wave_kernel)
from .symbols import Symbol, make_symbol, parse_symbol_spec

__all__ = [
    "CutoffFamily",
    "CutoffKind",
    "CutoffPartition",
    "RadialCutoff",
    "build_partition",
    "cutoff_family",
    "WaveKernel",
    "apply_Tt_to_atom",
    "split_kernel",
    "split_kernel_derivative",
    "split_small_t_singular",
    "wave_kernel",
    "Symbol",
    "make_symbol",
    "parse_symbol_spec",
]
