"""
Harish-Chandra c-function and Plancherel density in Jacobi form
"""
import logging
import math

import numpy as np
from scipy.special import gammaln, loggamma

from ..exceptions import DomainError, SingularityError
from ..models.space import SpaceParams
from ..models.spectral import ComplexFrequency

logger = logging.getLogger(__name__)

POLE_TOLERANCE = 1e-8
LN2 = math.log(2.0)


def reduced_c_inverse(p: SpaceParams, lam) -> np.ndarray:
    """
    R(λ) with c(λ)^{-1} = λ R(λ)

    R(λ) = i Γ((iλ+ρ)/2) Γ((iλ+α-β+1)/2) / (2^{ρ-iλ} Γ(α+1) Γ(1+iλ)) is entire
    apart from poles in the lower half plane and never vanishes on Im λ >= 0
    away from iℕ.

    Args:
        p: Space parameters
        lam: Spectral parameter(s), real or complex

    Returns:
        Complex array of R(λ)
    """
    lam = np.asarray(lam, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        return 1j * np.exp(_log_reduced(p, lam))


def _log_reduced(p: SpaceParams, lam: np.ndarray) -> np.ndarray:
    """log(R(λ)/i) on the principal branches of log Γ"""
    i_lam = 1j * lam
    return (loggamma((i_lam + p.rho) / 2)
            + loggamma((i_lam + p.alpha - p.beta + 1) / 2)
            - loggamma(1 + i_lam)
            - gammaln(p.alpha + 1)
            - (p.rho - i_lam) * LN2)


def _pole_distance(lam: np.ndarray) -> np.ndarray:
    """Distance to the nearest pole ik, k = 0, 1, 2, ... of c(λ)"""
    k = np.maximum(np.round(lam.imag), 0.0)
    return np.abs(lam - 1j * k)


def c_inverse(p: SpaceParams, lam) -> np.ndarray:
    """c(λ)^{-1} = λ R(λ), finite everywhere on the closed upper tube"""
    lam = np.asarray(lam, dtype=complex)
    return lam * reduced_c_inverse(p, lam)


def harish_chandra_c(p: SpaceParams, lam):
    """
    Harish-Chandra c-function c(λ)

    Args:
        p: Space parameters
        lam: ComplexFrequency, complex, float or array thereof

    Returns:
        c(λ) (complex scalar for scalar input)
    """
    scalar = isinstance(lam, (ComplexFrequency, complex, float, int))
    if isinstance(lam, ComplexFrequency):
        lam = lam.value
    lam = np.asarray(lam, dtype=complex)
    near = _pole_distance(lam) < POLE_TOLERANCE
    if np.any(near):
        raise SingularityError(f"λ = {lam[near].ravel()[0]} is within {POLE_TOLERANCE} of a pole of c")
    value = 1.0 / c_inverse(p, lam)
    return complex(value) if scalar else value


def plancherel_density(p: SpaceParams, lam):
    """
    Plancherel density |c(λ)|^{-2} = λ² |R(λ)|² for real λ

    Args:
        p: Space parameters
        lam: Real frequency or array

    Returns:
        Nonnegative density, zero at λ = 0
    """
    lam_arr = np.asarray(lam)
    if np.iscomplexobj(lam_arr) and np.any(lam_arr.imag != 0):
        raise DomainError("the Plancherel density is defined for real λ")
    lam_arr = np.abs(lam_arr.real.astype(float))
    value = lam_arr ** 2 * np.abs(reduced_c_inverse(p, lam_arr)) ** 2
    return float(value) if np.ndim(lam) == 0 else value


def plancherel_continuation(p: SpaceParams, lam) -> np.ndarray:
    """
    c(λ)^{-1} c(-λ)^{-1}, the continuation of |c(λ)|^{-2} off the real line

    The two Gamma quotients are combined in log form; each one alone
    overflows far up the imaginary direction while the product stays
    polynomially bounded away from the imaginary axis.

    Args:
        p: Space parameters
        lam: Complex spectral parameters

    Returns:
        Complex array equal to the Plancherel density on the real line
    """
    lam = np.asarray(lam, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        return lam ** 2 * np.exp(_log_reduced(p, lam) + _log_reduced(p, -lam))


def lambda_c(p: SpaceParams, lam) -> np.ndarray:
    """λ c(λ) = 1/R(λ)"""
    return 1.0 / reduced_c_inverse(p, lam)


def inverse_lambda_c_minus(p: SpaceParams, lam) -> np.ndarray:
    """λ^{-1} c(-λ)^{-1} = -R(-λ), analytic on 0 <= Im λ <= ρ'"""
    lam = np.asarray(lam, dtype=complex)
    return -reduced_c_inverse(p, -lam)
