"""
Special functions of rank-one Jacobi analysis: c-function, spherical and far-field functions
"""
from .cfunction import c_inverse, harish_chandra_c, inverse_lambda_c_minus, plancherel_density
from .spherical import asymptotic_residual, jost_fn, jost_table, spherical_fn, spherical_table

__all__ = [
    "c_inverse",
    "harish_chandra_c",
    "inverse_lambda_c_minus",
    "plancherel_density",
    "asymptotic_residual",
    "jost_fn",
    "jost_table",
    "spherical_fn",
    "spherical_table",
]
