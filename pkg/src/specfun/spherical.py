"""
Spherical functions φ_λ(s), their s-derivatives, and far-field (Jost) solutions
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from ..exceptions import DomainError, IntegrationError
from ..models.space import SpaceParams
from ..models.spectral import ComplexFrequency, SphericalMethod, SphericalValue
from .cfunction import harish_chandra_c

logger = logging.getLogger(__name__)

SERIES_TOLERANCE = 1e-16
MAX_SERIES_TERMS = 4000
SWITCH_RADIUS = 0.5
# largest |λ| s handled by the series before cancellation costs digits
SERIES_PHASE_LIMIT = 4.0
ODE_RTOL = 1e-11
ODE_ATOL = 1e-13


def hypergeometric(a, b, c, u, max_terms: int = MAX_SERIES_TERMS):
    """
    Gauss series ₂F₁(a, b; c; u) and its u-derivative, |u| < 1

    All arguments broadcast against each other.

    Returns:
        (F, dF/du) as complex arrays
    """
    a, b, c, u = np.broadcast_arrays(*(np.asarray(x, dtype=complex) for x in (a, b, c, u)))
    term = np.ones(u.shape, dtype=complex)
    dterm = a * b / c
    total = term.copy()
    dtotal = dterm.copy()
    for k in range(max_terms):
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * u
        dterm = dterm * (a + 1 + k) * (b + 1 + k) / ((c + 1 + k) * (k + 1)) * u
        total += term
        dtotal += dterm
        small = (np.abs(term) <= SERIES_TOLERANCE * np.abs(total)) & \
                (np.abs(dterm) <= SERIES_TOLERANCE * (np.abs(dtotal) + 1e-300))
        if small.all():
            return total, dtotal
    raise IntegrationError(
        f"hypergeometric series did not converge in {max_terms} terms",
        {"max_u": float(np.abs(u).max()), "terms": max_terms})


def switch_radius(lam) -> float:
    """Largest s at which every λ in the batch is still evaluated by the series"""
    top = float(np.max(np.abs(np.asarray(lam)))) if np.size(lam) else 0.0
    return SWITCH_RADIUS if top == 0 else min(SWITCH_RADIUS, SERIES_PHASE_LIMIT / top)


def series_table(p: SpaceParams, lam, s):
    """
    φ_λ(s) and ∂_sφ_λ(s) from the convergent series in tanh² s

    φ_λ(s) = cosh(s)^{-(ρ+iλ)} ₂F₁((ρ+iλ)/2, (α-β+1+iλ)/2; α+1; tanh² s)

    Args:
        p: Space parameters
        lam: (L,) spectral parameters
        s: (S,) radii

    Returns:
        (phi, dphi), complex arrays of shape (L, S)
    """
    lam = np.asarray(lam, dtype=complex)[:, None]
    s = np.asarray(s, dtype=float)[None, :]
    a = (p.rho + 1j * lam) / 2
    b = (p.alpha - p.beta + 1 + 1j * lam) / 2
    tanh = np.tanh(s)
    u = tanh ** 2
    F, dF = hypergeometric(a, b, p.alpha + 1, u)
    prefactor = np.exp(-2 * a * np.log(np.cosh(s)))
    phi = prefactor * F
    dphi = -2 * a * tanh * phi + prefactor * dF * 2 * tanh / np.cosh(s) ** 2
    return phi, dphi


def radial_coefficient(p: SpaceParams, s):
    """q(s) = δ'(s)/δ(s) = m1 coth s + 2 m2 coth 2s"""
    q = p.m1 / np.tanh(s)
    if p.m2:
        q = q + 2 * p.m2 / np.tanh(2 * s)
    return q


def ode_table(p: SpaceParams, lam, s_start: float, phi0, dphi0, s_eval,
              rtol: float = ODE_RTOL, atol: float = ODE_ATOL):
    """
    Continue φ_λ from s_start through the radial equation

    Integrates w = e^{ρs} φ, which solves
    w'' + (q - 2ρ) w' + (λ² + 2ρ² - ρ q) w = 0 and stays bounded for real λ.

    Args:
        p: Space parameters
        lam: (L,) spectral parameters
        s_start: Starting radius
        phi0: (L,) φ at s_start
        dphi0: (L,) φ' at s_start
        s_eval: (S,) increasing radii >= s_start

    Returns:
        (phi, dphi) of shape (L, S)
    """
    lam = np.asarray(lam)
    real = not np.iscomplexobj(lam) or np.all(np.asarray(lam).imag == 0)
    dtype = float if real else complex
    lam = lam.real.astype(float) if real else lam.astype(complex)
    s_eval = np.asarray(s_eval, dtype=float)
    rho = p.rho
    lam_sq = lam ** 2
    count = lam.size

    scale = np.exp(rho * s_start)
    w0 = scale * np.asarray(phi0)
    v0 = scale * (np.asarray(dphi0) + rho * np.asarray(phi0))
    if real:
        w0, v0 = w0.real, v0.real
    y0 = np.concatenate([w0, v0]).astype(dtype)

    def rhs(s, y):
        q = radial_coefficient(p, s)
        w = y[:count]
        v = y[count:]
        return np.concatenate([v, -(q - 2 * rho) * v - (lam_sq + 2 * rho ** 2 - rho * q) * w])

    # t_eval must be strictly increasing
    knots, inverse = np.unique(s_eval, return_inverse=True)
    sol = solve_ivp(rhs, (s_start, float(knots[-1])), y0, method="DOP853",
                    t_eval=knots, rtol=rtol, atol=atol)
    if not sol.success:
        raise IntegrationError(f"radial ODE failed: {sol.message}", {
            "s_start": s_start, "s_end": float(s_eval[-1]), "nfev": int(sol.nfev),
            "lam_max": float(np.max(np.abs(lam))) if count else 0.0,
        })
    damping = np.exp(-rho * s_eval)[None, :]
    w = sol.y[:count][:, inverse]
    v = sol.y[count:][:, inverse]
    return damping * w, damping * (v - rho * w)


@dataclass
class SphericalTable:
    """φ_λ(s) and ∂_sφ_λ(s) on a (λ, s) grid"""
    lam: np.ndarray
    s: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    switch: float
    closed_form: bool = False

    def method(self, i_s: int) -> SphericalMethod:
        if self.closed_form:
            return SphericalMethod.CLOSED_FORM
        return SphericalMethod.SERIES if self.s[i_s] <= self.switch else SphericalMethod.ODE


def is_h3(p: SpaceParams) -> bool:
    return p.m1 == 2 and p.m2 == 0


def closed_form_h3(lam, s):
    """
    φ_λ(s) = sin(λs)/(λ sinh s) on H³ with its s-derivative

    Points with s < 1e-3 use the series limit to avoid 0/0.
    """
    lam = np.asarray(lam, dtype=complex)[:, None]
    s = np.asarray(s, dtype=float)[None, :]
    small = np.broadcast_to(s < 1e-3, np.broadcast_shapes(lam.shape, s.shape))
    safe_s = np.where(s < 1e-3, 1.0, s)
    safe_lam = np.where(lam == 0, 1e-300, lam)
    with np.errstate(invalid="ignore", divide="ignore"):
        sin_term = np.where(lam == 0, safe_s, np.sin(safe_lam * safe_s) / safe_lam)
        cos_term = np.cos(lam * safe_s)
        phi = sin_term / np.sinh(safe_s)
        dphi = (cos_term * np.sinh(safe_s) - sin_term * np.cosh(safe_s)) / np.sinh(safe_s) ** 2
    if small.any():
        # φ = 1 - (λ²+1) s²/6 + O(s⁴) on H³
        k = -(lam ** 2 + 1) / 6
        quartic = (lam ** 2 + 1) * (3 * lam ** 2 + 7) / 360
        series_phi = 1 + k * s ** 2 + quartic * s ** 4
        series_dphi = 2 * k * s + 4 * quartic * s ** 3
        phi = np.where(small, series_phi, phi)
        dphi = np.where(small, series_dphi, dphi)
    return phi, dphi


def spherical_table(p: SpaceParams, lam, s, method: str = "auto",
                    rtol: float = ODE_RTOL, atol: float = ODE_ATOL) -> SphericalTable:
    """
    Tabulate φ_λ(s) and ∂_sφ_λ(s) for every (λ, s) pair

    Args:
        p: Space parameters
        lam: Spectral parameters (real or complex, |Im λ| <= ρ')
        s: Nondecreasing radii >= 0
        method: "auto" (series then ODE) or "closed_form" (H³ only)

    Returns:
        SphericalTable; values are real arrays when every λ is real
    """
    lam = np.atleast_1d(np.asarray(lam))
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s < 0):
        raise DomainError("spherical functions are evaluated at s >= 0")
    if np.any(np.diff(s) < 0):
        raise DomainError("radii must be nondecreasing")
    if np.iscomplexobj(lam) and np.any(np.abs(lam.imag) > p.rho_prime + 1e-12):
        raise DomainError(f"|Im λ| exceeds the tube half-width ρ' = {p.rho_prime}")
    real = not np.iscomplexobj(lam) or np.all(lam.imag == 0)

    if method == "closed_form":
        if not is_h3(p):
            raise DomainError("the closed form is available on H³ only")
        phi, dphi = closed_form_h3(lam, s)
        table = SphericalTable(lam, s, phi, dphi, switch=np.inf, closed_form=True)
    elif method == "auto":
        switch = switch_radius(lam)
        near = s <= switch
        phi = np.empty((lam.size, s.size), dtype=complex)
        dphi = np.empty_like(phi)
        if near.any():
            phi[:, near], dphi[:, near] = series_table(p, lam, s[near])
        if (~near).any():
            start_phi, start_dphi = series_table(p, lam, [switch])
            far_phi, far_dphi = ode_table(p, lam, switch, start_phi[:, 0], start_dphi[:, 0],
                                          s[~near], rtol=rtol, atol=atol)
            phi[:, ~near], dphi[:, ~near] = far_phi, far_dphi
        table = SphericalTable(lam, s, phi, dphi, switch=switch)
    else:
        raise DomainError(f"unknown spherical-function method {method!r}")

    if real:
        table.values = table.values.real.copy()
        table.derivatives = table.derivatives.real.copy()
    return table


def spherical_fn(p: SpaceParams, lam, s: float, deriv: int = 0, method: str = "auto") -> SphericalValue:
    """
    Spherical function φ_λ(s) with its s-derivative

    Args:
        p: Space parameters
        lam: ComplexFrequency, complex or float with |Im λ| <= ρ'
        s: Radius >= 0
        deriv: 0 or 1; selects SphericalValue.requested, both values are filled
        method: "auto" or "closed_form"

    Returns:
        SphericalValue
    """
    if deriv not in (0, 1):
        raise DomainError("deriv must be 0 or 1")
    freq = ComplexFrequency.coerce(lam)
    freq.check_tube(p.rho_prime)
    if s < 0:
        raise DomainError("spherical functions are evaluated at s >= 0")
    lam_arr = np.array([freq.re]) if freq.is_real else np.array([freq.value])
    table = spherical_table(p, lam_arr, [s], method=method)
    value = table.values[0, 0]
    derivative = table.derivatives[0, 0]
    if freq.is_real:
        value, derivative = float(value), float(derivative)
    return SphericalValue(value, derivative, table.method(0), deriv)


def asymptotic_residual(p: SpaceParams, lam: float, s: float) -> float:
    """
    |φ_λ(s) e^{ρs} - 2 Re(c(λ) e^{iλs})|, the deviation from the leading far field

    Args:
        p: Space parameters
        lam: Real λ != 0
        s: Radius >= 1/10

    Returns:
        Nonnegative residual
    """
    if lam == 0:
        raise DomainError("λ = 0 is a pole of the c-function")
    if s < 0.1:
        raise DomainError("the far-field expansion is used for s >= 1/10")
    phi = spherical_fn(p, float(lam), s).value
    leading = 2 * (harish_chandra_c(p, complex(lam)) * np.exp(1j * lam * s)).real
    return abs(phi * np.exp(p.rho * s) - leading)


def jost_table(p: SpaceParams, mu, s):
    """
    Far-field solutions Φ_μ(s) and ∂_sΦ_μ(s)

    Φ_μ(s) = (2 cosh s)^{iμ-ρ} ₂F₁((ρ-iμ)/2, (α-β+1-iμ)/2; 1-iμ; sech² s)
    behaves like e^{(iμ-ρ)s} at infinity and φ_μ = c(μ)Φ_μ + c(-μ)Φ_{-μ}.

    Args:
        p: Space parameters
        mu: (L,) spectral parameters with 1 - iμ not in {0, -1, -2, ...}
        s: (S,) radii > 0

    Returns:
        (Phi, dPhi) complex arrays of shape (L, S)
    """
    mu = np.atleast_1d(np.asarray(mu, dtype=complex))[:, None]
    s = np.atleast_1d(np.asarray(s, dtype=float))[None, :]
    if np.any(s <= 0):
        raise DomainError("far-field solutions are evaluated at s > 0")
    c = 1 - 1j * mu
    bad = (np.abs(c.imag) < 1e-12) & (c.real <= 0) & (np.abs(c.real - np.round(c.real)) < 1e-12)
    if bad.any():
        raise DomainError("1 - iμ is a nonpositive integer")
    z = 1 / np.cosh(s) ** 2
    F, dF = hypergeometric((p.rho - 1j * mu) / 2, (p.alpha - p.beta + 1 - 1j * mu) / 2, c, z)
    tanh = np.tanh(s)
    prefactor = np.exp((1j * mu - p.rho) * np.log(2 * np.cosh(s)))
    Phi = prefactor * F
    dPhi = (1j * mu - p.rho) * tanh * Phi + prefactor * dF * (-2 * z * tanh)
    return Phi, dPhi


def jost_fn(p: SpaceParams, mu, s: float, deriv: int = 0) -> complex:
    """Scalar far-field solution Φ_μ(s) (deriv=0) or its s-derivative (deriv=1)"""
    if deriv not in (0, 1):
        raise DomainError("deriv must be 0 or 1")
    freq = ComplexFrequency.coerce(mu)
    Phi, dPhi = jost_table(p, [freq.value], [s])
    return complex(dPhi[0, 0] if deriv else Phi[0, 0])
