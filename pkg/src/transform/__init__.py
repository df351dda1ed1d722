"""
Spherical Fourier transform of radial functions
"""
from .plan import TransformPlan, get_plan, plancherel_constant
from .operations import (forward, gradient_norm, inverse, lp_norm, multiplier_apply,
                         plancherel_norm, radial_convolve)

__all__ = [
    "TransformPlan",
    "get_plan",
    "plancherel_constant",
    "forward",
    "gradient_norm",
    "inverse",
    "lp_norm",
    "multiplier_apply",
    "plancherel_norm",
    "radial_convolve",
]
