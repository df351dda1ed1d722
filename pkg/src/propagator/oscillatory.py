"""
Oscillatory quadrature: Filon-Simpson rules and Fourier tails to infinity
"""
import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from ..exceptions import DomainError

logger = logging.getLogger(__name__)

# below this |θ| the Filon weights use their Taylor series
SERIES_THETA = 1.0 / 6.0
PANEL_NODES = 64
# tails are summed panel by panel until |ω| λ reaches this value
TAIL_REACH = 400.0
MAX_PANELS = 40
BOUNDARY_STEP = 1e-2
# relative accuracy assumed for amplitude evaluations
ROUNDING = 1e-13

Amplitude = Callable[[np.ndarray], np.ndarray]


@dataclass
class QuadratureResult:
    """Integral value with an error estimate and an optional warning"""
    value: complex
    error: float
    warning: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.warning is None and math.isfinite(self.error)

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        return QuadratureResult(self.value + other.value, self.error + other.error,
                                self.warning or other.warning)


def filon_weights(theta):
    """
    Filon weights α(θ), β(θ), γ(θ)

    Args:
        theta: ω h, any real array

    Returns:
        (alpha, beta, gamma) arrays
    """
    theta = np.asarray(theta, dtype=float)
    small = np.abs(theta) < SERIES_THETA
    t = np.where(small, 1.0, theta)
    sin, cos = np.sin(t), np.cos(t)
    alpha = (t ** 2 + t * sin * cos - 2 * sin ** 2) / t ** 3
    beta = 2 * (t * (1 + cos ** 2) - 2 * sin * cos) / t ** 3
    gamma = 4 * (sin - t * cos) / t ** 3
    if small.any():
        s = theta
        alpha = np.where(small, 2 * s ** 3 / 45 - 2 * s ** 5 / 315 + 2 * s ** 7 / 4725, alpha)
        beta = np.where(small, 2 / 3 + 2 * s ** 2 / 15 - 4 * s ** 4 / 105 + 2 * s ** 6 / 567, beta)
        gamma = np.where(small, 4 / 3 - 2 * s ** 2 / 15 + s ** 4 / 210 - s ** 6 / 11340, gamma)
    return alpha, beta, gamma


def _filon_parts(values, nodes, omega):
    values = np.asarray(values)
    nodes = np.asarray(nodes, dtype=float)
    if values.shape[-1] % 2 == 0 or values.shape[-1] < 3:
        raise DomainError("Filon rules need an odd number of at least three nodes")
    omega = np.asarray(omega, dtype=float)
    h = nodes[..., 1] - nodes[..., 0]
    alpha, beta, gamma = filon_weights(omega * h)
    phase = omega[..., None] * nodes
    return values, h, alpha, beta, gamma, np.cos(phase), np.sin(phase)


def filon_cos(values, nodes, omega):
    """
    ∫ f(x) cos(ωx) dx over uniform nodes along the last axis

    Args:
        values: f at the nodes, shape (..., N) with N odd
        nodes: Uniform nodes, shape broadcastable to values
        omega: Frequencies, shape (...)

    Returns:
        Integral estimates of shape (...)
    """
    f, h, alpha, beta, gamma, cos, sin = _filon_parts(values, nodes, omega)
    fc = f * cos
    even = fc[..., ::2].sum(axis=-1) - 0.5 * (fc[..., 0] + fc[..., -1])
    odd = fc[..., 1::2].sum(axis=-1)
    ends = f[..., -1] * sin[..., -1] - f[..., 0] * sin[..., 0]
    return h * (alpha * ends + beta * even + gamma * odd)


def filon_sin(values, nodes, omega):
    """∫ f(x) sin(ωx) dx over uniform nodes along the last axis"""
    f, h, alpha, beta, gamma, cos, sin = _filon_parts(values, nodes, omega)
    fs = f * sin
    even = fs[..., ::2].sum(axis=-1) - 0.5 * (fs[..., 0] + fs[..., -1])
    odd = fs[..., 1::2].sum(axis=-1)
    ends = f[..., 0] * cos[..., 0] - f[..., -1] * cos[..., -1]
    return h * (alpha * ends + beta * even + gamma * odd)


def filon_exp(values, nodes, omega):
    """∫ f(x) e^{iωx} dx over uniform nodes along the last axis"""
    return filon_cos(values, nodes, omega) + 1j * filon_sin(values, nodes, omega)


def halving_error(rule, values, nodes, omega):
    """Richardson estimate |I_h - I_{2h}|/15 on the longest prefix with (N-1) divisible by 4"""
    size = values.shape[-1]
    usable = size - ((size - 1) % 4)
    if usable < 5:
        return np.zeros(np.shape(omega))
    fine = rule(values[..., :usable], nodes[..., :usable], omega)
    coarse = rule(values[..., :usable:2], nodes[..., :usable:2], omega)
    return np.abs(fine - coarse) / 15.0


def _boundary_term(g: Amplitude, end: float, omega: float) -> Tuple[complex, float]:
    """
    ∫_end^∞ g e^{iωλ} dλ from three integrations by parts

    Returns:
        (value, error) with the error bounded by the first dropped term
        plus the rounding of the difference quotients
    """
    step = BOUNDARY_STEP * end
    nodes = end + step * np.arange(-2.0, 3.0)
    values = np.asarray(g(nodes))
    g0 = values[2]
    g1 = (values[3] - values[1]) / (2 * step)
    g2 = (values[3] - 2 * values[2] + values[1]) / step ** 2
    g3 = (values[4] - 2 * values[3] + 2 * values[1] - values[0]) / (2 * step ** 3)
    iw = 1j * omega
    w = abs(omega)
    value = -np.exp(iw * end) * (g0 / iw - g1 / iw ** 2 + g2 / iw ** 3)
    scale = float(np.max(np.abs(values)))
    rounding = ROUNDING * scale * (1 / w + 1 / (step * w ** 2) + 4 / (step ** 2 * w ** 3))
    return complex(value), float(abs(g3)) / w ** 4 + rounding


def fourier_tail(g: Amplitude, start: float, omega: float,
                 per_panel: int = PANEL_NODES, reach: float = TAIL_REACH) -> QuadratureResult:
    """
    ∫_start^∞ g(λ) e^{iωλ} dλ for a slowly varying amplitude g

    The range is cut into doubling panels [L, 2L], each integrated by a
    Filon rule, until |ω| L >= reach; the remainder is the boundary
    expansion from repeated integration by parts. Amplitudes growing like
    a power of λ are summed in the Abel sense.

    Args:
        g: Vectorized amplitude
        start: Lower limit > 0
        omega: Nonzero frequency
        per_panel: Even number of Filon intervals per panel
        reach: Target |ω| λ at the cut

    Returns:
        QuadratureResult
    """
    if not start > 0:
        raise DomainError("Fourier tails start at a positive frequency")
    if omega == 0:
        return QuadratureResult(0.0, math.inf, "zero frequency: tail diverges")
    panels = max(1, int(math.ceil(math.log2(max(reach / (abs(omega) * start), 1.0)))))
    warning = None
    if panels > MAX_PANELS:
        panels = MAX_PANELS
        warning = f"|ω| = {abs(omega):.3e} too small for the tail reach"
    lefts = start * 2.0 ** np.arange(panels)
    nodes = lefts[:, None] * (1 + np.linspace(0.0, 1.0, per_panel + 1))[None, :]
    values = np.asarray(g(nodes.ravel())).reshape(nodes.shape)
    omegas = np.full(panels, float(omega))
    body = filon_exp(values, nodes, omegas)
    error = halving_error(filon_exp, values, nodes, omegas)
    end = float(start * 2.0 ** panels)
    boundary, boundary_error = _boundary_term(g, end, omega)
    total = complex(body.sum() + boundary)
    estimate = float(error.sum()) + boundary_error
    if not np.isfinite(total):
        return QuadratureResult(complex(np.nan), math.inf, "non-finite tail")
    return QuadratureResult(total, estimate, warning)


def fourier_tail_qawf(g: Amplitude, start: float, omega: float,
                      epsabs: float = 1e-13, limit: int = 200) -> QuadratureResult:
    """
    ∫_start^∞ g(λ) e^{iωλ} dλ with QUADPACK's Fourier-integral mode

    One integration by parts moves the amplitude to g', which decays for
    every amplitude used here; g' comes from central differences.

    Args:
        g: Vectorized amplitude
        start: Lower limit > 0
        omega: Nonzero frequency
        epsabs: Absolute tolerance per call
        limit: Cycle limit

    Returns:
        QuadratureResult
    """
    if omega == 0:
        return QuadratureResult(0.0, math.inf, "zero frequency: tail diverges")
    w = abs(omega)
    sign = 1.0 if omega > 0 else -1.0

    def dg(lam: float) -> complex:
        step = 1e-4 * lam
        return complex((g(np.array([lam + step]))[0] - g(np.array([lam - step]))[0]) / (2 * step))

    parts = {}
    error = 0.0
    messages = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        for weight in ("cos", "sin"):
            for name, part in (("re", lambda x: dg(x).real), ("im", lambda x: dg(x).imag)):
                value, err = quad(part, start, np.inf, weight=weight, wvar=w, epsabs=epsabs, limlst=limit)
                parts[(weight, name)] = value
                error += abs(err)
        messages = [str(item.message) for item in caught if issubclass(item.category, IntegrationWarning)]
    cos_part = parts[("cos", "re")] + 1j * parts[("cos", "im")]
    sin_part = parts[("sin", "re")] + 1j * parts[("sin", "im")]
    # ∫ g' e^{iωλ} with e^{iωλ} = cos(wλ) + i sign sin(wλ)
    integral_dg = cos_part + 1j * sign * sin_part
    g0 = complex(np.asarray(g(np.array([start])))[0])
    iw = 1j * omega
    value = -g0 * np.exp(iw * start) / iw - integral_dg / iw
    warning = "; ".join(messages) if messages else None
    if warning:
        logger.debug(f"Fourier tail at ω = {omega:.4g}: {warning}")
    return QuadratureResult(complex(value), error / w, warning)
