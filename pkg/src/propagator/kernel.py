"""
Radial kernel of the wave multiplier m(√L) cos(t√L)

K_t(s) = C_P ∫_0^∞ m(λ) cos(tλ) φ_λ(s) |c(λ)|^{-2} dλ is evaluated point by
point. On [0, λ_max] a Filon rule treats cos(tλ) exactly against the
tabulated spherical functions; beyond λ_max the far-field form
φ_λ|c|^{-2} = 2 Re(Φ_λ c(-λ)^{-1}) with a first-order WKB amplitude for Φ_λ
turns the remainder into two Fourier tails at frequencies s ± t. Past the
light cone the integral over the whole real line is shifted to Im λ = ρ,
which exposes the e^{-2ρs} decay without cancellation. Inside the cone at
s < 1/10 the WKB form is too coarse, and for symbols of polynomial growth
the remainder past λ_max is instead rotated onto the ray λ_max + iy, y >= 0,
where e^{itλ}φ_λ(s) decays like e^{-(t-s)y}.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.integrate import quad

from ..config import GridSpec, KernelOptions
from ..exceptions import DomainError, RegimeMismatchError, UnsupportedInputError
from ..geometry.measure import density
from ..models.atom import Atom
from ..models.profile import RadialProfile
from ..models.space import SpaceParams
from ..specfun.cfunction import c_inverse, plancherel_continuation, plancherel_density
from ..specfun.spherical import jost_table, radial_coefficient, series_table, spherical_table
from ..transform.operations import multiplier_apply, multiplier_values
from ..transform.plan import get_plan, lam_grid_from, plancherel_constant
from ..utils.analysis import smooth_transition, smooth_transition_derivative
from ..utils.parallel import ordered_map
from .oscillatory import QuadratureResult, filon_cos, filon_exp, fourier_tail, fourier_tail_qawf, halving_error
from .symbols.base import Symbol

logger = logging.getLogger(__name__)

# radii below this get a λ-range extended to SMALL_S_REACH / s, or the ray tail
SMALL_S = 0.1
SMALL_S_REACH = 6.0
# Gauss-Laguerre nodes of the ray tail; the estimate doubles them
RAY_NODES = 48
# contour shift needs s > t + LIGHT_CONE_GAP
LIGHT_CONE_GAP = 0.2
CONTOUR_MIN_S = {"auto": 1.0, "on": 0.5}
# symbol families bounded by a power of |λ| off the real line
RAY_FAMILIES = ("rational_power",)
# regime boundary between small and large t
LARGE_T = 0.5
# spacing of the default output grid of apply_Tt_to_atom
TT_STEP = 0.01
TT_MARGIN = 1.0
STEP_ATOM_POINTS = 2001

SymbolLike = Union[Symbol, Callable[[np.ndarray], np.ndarray]]


def far_field_potential(p: SpaceParams, s):
    """Q(s) = q²/4 + q'/2 - ρ², the potential of u = δ^{1/2} φ"""
    s = np.asarray(s, dtype=float)
    q = radial_coefficient(p, s)
    dq = -p.m1 / np.sinh(s) ** 2
    if p.m2:
        dq = dq - 4 * p.m2 / np.sinh(2 * s) ** 2
    return q ** 2 / 4 + dq / 2 - p.rho ** 2


@lru_cache(maxsize=8192)
def far_field_phase(p: SpaceParams, s: float) -> float:
    """
    J(s) = ∫_s^∞ Q(u) du

    Closed form m1(m1-2)/4 (coth s - 1) when m2 = 0.
    """
    if p.m2 == 0:
        return p.m1 * (p.m1 - 2) / 4 * (1 / math.tanh(s) - 1)
    value, _ = quad(lambda u: float(far_field_potential(p, u)), s, np.inf,
                    epsabs=1e-13, epsrel=1e-11, limit=200)
    return value


def far_field_prefactor(p: SpaceParams, s: float) -> float:
    """(ω 2^{-2ρ} / δ(s))^{1/2}, so that Φ_λ(s) ~ prefactor e^{iλs}"""
    return math.sqrt(p.sphere_area * 2.0 ** (-2 * p.rho) / density(p, s))


def wkb_amplitude(p: SpaceParams, s: float, derivative: bool = False) -> Callable[[np.ndarray], np.ndarray]:
    """
    Slowly varying part of Φ_μ(s) e^{-iμs} (or of ∂_sΦ_μ(s) e^{-iμs}) for large |μ|

    Args:
        p: Space parameters
        s: Radius > 0
        derivative: Amplitude of the s-derivative

    Returns:
        Vectorized function of μ (real or complex)
    """
    pref = far_field_prefactor(p, s)
    phase = far_field_phase(p, s)
    q = float(radial_coefficient(p, s))
    potential = float(far_field_potential(p, s))

    def amplitude(mu):
        mu = np.asarray(mu, dtype=complex)
        v = 1 + 1j * phase / (2 * mu)
        if derivative:
            return pref * ((1j * mu - q / 2) * v - 1j * potential / (2 * mu))
        return pref * v

    return amplitude


@dataclass
class _PointResult:
    value: float
    derivative: float
    error: float
    derivative_error: float
    method: str
    warning: Optional[str] = None
    imaginary: float = 0.0


@dataclass(frozen=True, eq=False)
class WaveKernel:
    """Samples of K_t and ∂_sK_t with per-point reliability"""
    p: SpaceParams
    t: float
    symbol: SymbolLike
    profile: RadialProfile
    derivative_profile: RadialProfile
    reliable: np.ndarray
    errors: np.ndarray
    methods: Tuple[str, ...]
    lam_grid: np.ndarray
    exclusion_radius: float
    diagnostics: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def s_grid(self) -> np.ndarray:
        return self.profile.s_grid

    @property
    def values(self) -> np.ndarray:
        return self.profile.values

    @property
    def singular_mask(self) -> np.ndarray:
        """Points inside the exclusion band around the sphere s = t"""
        return np.abs(self.s_grid - self.t) < self.exclusion_radius

    @property
    def unreliable_count(self) -> int:
        return int(np.count_nonzero(~self.reliable))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "s": self.s_grid,
            "K": self.profile.values,
            "Kprime": self.derivative_profile.values,
            "reliable": self.reliable.astype(int),
            "method": list(self.methods),
            "error": self.errors,
        })

    def summary(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "space": self.p.label,
            "symbol": self.symbol.to_dict() if hasattr(self.symbol, "to_dict") else repr(self.symbol),
            "points": int(self.s_grid.size),
            "unreliable": self.unreliable_count,
            "contour_points": sum(1 for method in self.methods if method == "contour"),
            "lam_max": float(self.lam_grid[-1]),
            "exclusion_radius": self.exclusion_radius,
            "diagnostics": list(self.diagnostics),
        }


def _odd_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Uniform grid from start to stop with (N-1) divisible by 4 and spacing <= step"""
    intervals = max(4, int(math.ceil((stop - start) / step)))
    intervals += (-intervals) % 4
    return np.linspace(start, stop, intervals + 1)


class _KernelEvaluator:
    """Shared tables and per-point evaluation for one (p, m, t, grids)"""

    def __init__(self, p: SpaceParams, m: SymbolLike, t: float, s_grid: np.ndarray,
                 lam_grid: np.ndarray, options: KernelOptions):
        self.p = p
        self.m = m
        self.t = t
        self.s_grid = s_grid
        self.lam = lam_grid
        self.options = options
        self.constant = plancherel_constant(p)
        self.lam_max = float(lam_grid[-1])
        self.step = float(lam_grid[1] - lam_grid[0])
        plan = get_plan(p, s_grid, lam_grid)
        self.weight = multiplier_values(m, lam_grid) * plan.spectral_weight
        omega = np.full(s_grid.size, t)
        values = (self.weight[:, None] * plan.phi).T
        dvalues = (self.weight[:, None] * plan.dphi).T
        self.base = filon_cos(values, lam_grid, omega)
        self.base_error = halving_error(filon_cos, values, lam_grid, omega)
        self.dbase = filon_cos(dvalues, lam_grid, omega)
        self.dbase_error = halving_error(filon_cos, dvalues, lam_grid, omega)
        min_s = CONTOUR_MIN_S.get(options.contour)
        tube = getattr(m, "tube", math.inf)
        self.contour_from = None if min_s is None or tube < p.rho - 1e-12 else min_s
        family = getattr(getattr(m, "family", None), "value", "")
        self.ray_rules = ([np.polynomial.laguerre.laggauss(n) for n in (RAY_NODES, 2 * RAY_NODES)]
                          if family in RAY_FAMILIES else None)

    def _tail(self, g, start: float, omega: float) -> QuadratureResult:
        if self.options.tail == "qawf":
            return fourier_tail_qawf(g, start, omega)
        return fourier_tail(g, start, omega)

    def uses_contour(self, s: float) -> bool:
        return self.contour_from is not None and s > self.t + LIGHT_CONE_GAP and s >= self.contour_from

    def uses_ray(self, s: float) -> bool:
        return self.ray_rules is not None and 0 < s < SMALL_S and self.t - s >= LIGHT_CONE_GAP

    def _ray_tail(self, s: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Remainders past λ_max of the value and derivative integrals

        ∫_Λ^∞ g(λ) cos(tλ) dλ = Re i e^{itΛ} ∫_0^∞ g(Λ + iy) e^{-ty} dy for the
        even integrand g = m φ_λ(s) |c|^{-2}, continued analytically. The
        y-integral runs over Gauss-Laguerre nodes scaled to the rate t - s.

        Returns:
            ([value, derivative], [error, error]) without the factor C_P
        """
        kappa = self.t - s
        rotation = 1j * np.exp(1j * self.t * self.lam_max) / kappa
        results = []
        for nodes, weights in self.ray_rules:
            y = nodes / kappa
            lam = self.lam_max + 1j * y
            phi, dphi = series_table(self.p, lam, [s])
            with np.errstate(over="ignore", invalid="ignore", under="ignore"):
                factor = self.m(lam) * plancherel_continuation(self.p, lam) * np.exp(-s * y) * weights
                factor = np.where(weights > 0, factor, 0.0)
            results.append((rotation * np.array([factor @ phi[:, 0], factor @ dphi[:, 0]])).real)
        coarse, fine = results
        return fine, np.abs(fine - coarse)

    def evaluate(self, index: int) -> _PointResult:
        s = float(self.s_grid[index])
        if self.uses_contour(s):
            return self._contour_point(s)
        return self._direct_point(index, s)

    def _direct_point(self, index: int, s: float) -> _PointResult:
        value = complex(self.base[index])
        deriv = complex(self.dbase[index])
        error = float(self.base_error[index])
        derror = float(self.dbase_error[index])
        if s == 0:
            return _PointResult(self.constant * value.real, self.constant * deriv.real,
                                self.constant * error, self.constant * derror, "direct",
                                "no far-field tail at s = 0")
        if self.uses_ray(s):
            tail, tail_error = self._ray_tail(s)
            if np.all(np.isfinite(tail)):
                c = self.constant
                return _PointResult(c * (value.real + tail[0]), c * (deriv.real + tail[1]),
                                    c * (error + tail_error[0]), c * (derror + tail_error[1]), "ray")
            logger.debug(f"Ray tail at s={s:g} is not finite, using the far-field tail")
        start = self.lam_max
        if s < SMALL_S and SMALL_S_REACH / s > self.lam_max:
            start = SMALL_S_REACH / s
            ext = _odd_grid(self.lam_max, start, min(0.25 / s, self.lam_max / 16))
            table = spherical_table(self.p, ext, [s])
            weight = multiplier_values(self.m, ext) * plancherel_density(self.p, ext)
            rows = np.vstack([weight * table.values[:, 0], weight * table.derivatives[:, 0]])
            omega = np.full(2, self.t)
            ext_values = filon_cos(rows, ext, omega)
            ext_errors = halving_error(filon_cos, rows, ext, omega)
            value += ext_values[0]
            deriv += ext_values[1]
            error += float(ext_errors[0])
            derror += float(ext_errors[1])

        amplitude = wkb_amplitude(self.p, s)
        damplitude = wkb_amplitude(self.p, s, derivative=True)

        def g(lam):
            return self.m(lam) * c_inverse(self.p, -lam) * amplitude(lam)

        def dg(lam):
            return self.m(lam) * c_inverse(self.p, -lam) * damplitude(lam)

        tail = QuadratureResult(0.0, 0.0)
        dtail = QuadratureResult(0.0, 0.0)
        for omega in (s + self.t, s - self.t):
            tail = tail + self._tail(g, start, omega)
            dtail = dtail + self._tail(dg, start, omega)
        value += tail.value.real
        deriv += dtail.value.real
        warning = tail.warning or dtail.warning
        return _PointResult(self.constant * value.real, self.constant * deriv.real,
                            self.constant * (error + tail.error), self.constant * (derror + dtail.error),
                            "direct", warning)

    def _contour_point(self, s: float) -> _PointResult:
        p, rho = self.p, self.p.rho
        amplitudes = {}
        for sign in (1.0, -1.0):
            mu = sign * self.lam + 1j * rho
            Phi, dPhi = jost_table(p, mu, [s])
            rotation = np.exp(-1j * mu * s)
            factor = self.m(mu) * c_inverse(p, -mu)
            amplitudes[sign] = (factor * Phi[:, 0] * rotation, factor * dPhi[:, 0] * rotation)
        far = wkb_amplitude(p, s)
        dfar = wkb_amplitude(p, s, derivative=True)

        def far_side(sign, amp):
            def g(lam):
                mu = sign * np.asarray(lam) + 1j * rho
                return self.m(mu) * c_inverse(p, -mu) * amp(mu)
            return g

        totals = [0j, 0j]
        errors = [0.0, 0.0]
        warning = None
        for omega in (s + self.t, s - self.t):
            damping = 0.5 * math.exp(-rho * omega)
            for slot, amp in enumerate((far, dfar)):
                body = 0j
                err = 0.0
                for sign in (1.0, -1.0):
                    values = amplitudes[sign][slot]
                    w = sign * omega
                    body += complex(filon_exp(values, self.lam, np.asarray(w)))
                    err += float(halving_error(filon_exp, values, self.lam, np.asarray(w)))
                    tail = self._tail(far_side(sign, amp), self.lam_max, w)
                    body += tail.value
                    err += tail.error
                    warning = warning or tail.warning
                totals[slot] += damping * body
                errors[slot] += damping * err
        c = self.constant
        return _PointResult(c * totals[0].real, c * totals[1].real, c * errors[0], c * errors[1],
                            "contour", warning, imaginary=c * abs(totals[0].imag))


def wave_kernel(p: SpaceParams, m: SymbolLike, t: float, s_grid, lam_grid=None,
                options: Optional[KernelOptions] = None, threads: Optional[int] = None) -> WaveKernel:
    """
    Radial kernel K_t and its s-derivative on a grid

    Args:
        p: Space parameters
        m: Even symbol bounded on the real line
        t: Time; K_t is even in t
        s_grid: Strictly increasing radii >= 0
        lam_grid: Uniform frequencies [0, λ_max] with an odd number of points
        options: Exclusion radius, contour mode, tolerances, tail method
        threads: Worker count for the per-point evaluation

    Returns:
        WaveKernel; points failing the tolerance are flagged, not raised
    """
    options = options or KernelOptions()
    t = abs(float(t))
    s_grid = np.asarray(s_grid, dtype=float)
    lam_grid = lam_grid_from(GridSpec()) if lam_grid is None else np.asarray(lam_grid, dtype=float)
    if lam_grid[0] != 0 or lam_grid.size % 2 == 0:
        raise DomainError("kernel frequencies must start at 0 and have an odd number of points")
    order = getattr(m, "order", None)
    family = getattr(getattr(m, "family", None), "value", "")
    if order is not None and family != "gaussian" and order >= -p.d:
        logger.warning(f"Symbol order {order} >= -d = {-p.d}: K_t is not locally integrable, "
                       f"values are meaningful away from s = t only")

    evaluator = _KernelEvaluator(p, m, t, s_grid, lam_grid, options)
    points = ordered_map(evaluator.evaluate, range(s_grid.size), threads)

    values = np.array([point.value for point in points])
    derivs = np.array([point.derivative for point in points])
    errors = np.array([point.error for point in points])
    methods = tuple(point.method for point in points)
    excluded = np.abs(s_grid - t) < options.exclusion_radius
    reliable = np.ones(s_grid.size, dtype=bool)
    diagnostics = []
    for i, point in enumerate(points):
        budget = options.rtol * abs(point.value) + options.atol
        message = point.warning
        if message is None and not math.isfinite(point.error):
            message = "error estimate is not finite"
        if message is None and point.error > budget:
            message = (f"error {point.error:.2e} above tolerance {budget:.2e}; "
                       f"refine the λ-grid or widen the exclusion radius")
        dbudget = options.rtol * abs(point.derivative) + options.atol
        if message is None and not point.derivative_error <= dbudget:
            message = f"derivative error {point.derivative_error:.2e} above tolerance {dbudget:.2e}"
        if message is not None or excluded[i] or s_grid[i] == 0:
            reliable[i] = False
        if message is not None:
            diagnostics.append({"index": i, "s": float(s_grid[i]), "method": point.method,
                                "message": message})
    imaginary = max((point.imaginary for point in points), default=0.0)
    contour = sum(1 for method in methods if method == "contour")
    logger.info(f"Kernel: t={t:g} on {p.label}, {s_grid.size} radii, {contour} by contour shift, "
                f"{int(np.count_nonzero(~reliable))} unreliable")
    if imaginary:
        logger.debug(f"Largest imaginary residual of contour points: {imaginary:.3e}")

    meta = {"space": p.label, "t": t, "quantity": "K"}
    return WaveKernel(
        p=p,
        t=t,
        symbol=m,
        profile=RadialProfile(s_grid, values, meta),
        derivative_profile=RadialProfile(s_grid, derivs, dict(meta, quantity="Kprime")),
        reliable=reliable,
        errors=errors,
        methods=methods,
        lam_grid=lam_grid,
        exclusion_radius=options.exclusion_radius,
        diagnostics=diagnostics,
    )


def split_cutoff(t: float, regime: str) -> Tuple[Callable, Callable]:
    """
    Cutoff ψ of the kernel split and its derivative

    large_t: ψ_t = 1 on |s-t| <= 1/10, 0 on |s-t| >= 2/10
    small_t: ψ_0 = 1 on s <= 3/4, 0 on s >= 1
    """
    if regime == "large_t":
        if t < LARGE_T:
            raise RegimeMismatchError(f"large_t split needs t >= {LARGE_T}, got t = {t}")

        def psi(s):
            return 1.0 - smooth_transition((np.abs(s - t) - 0.1) / 0.1)

        def dpsi(s):
            return -smooth_transition_derivative((np.abs(s - t) - 0.1) / 0.1) / 0.1 * np.sign(s - t)

        return psi, dpsi
    if regime == "small_t":
        if t >= LARGE_T:
            raise RegimeMismatchError(f"small_t split needs t < {LARGE_T}, got t = {t}")

        def psi(s):
            return 1.0 - smooth_transition((s - 0.75) / 0.25)

        def dpsi(s):
            return -smooth_transition_derivative((s - 0.75) / 0.25) / 0.25

        return psi, dpsi
    raise DomainError(f"unknown regime {regime!r}; choose large_t or small_t")


def split_kernel(k: WaveKernel, regime: str) -> Tuple[RadialProfile, RadialProfile]:
    """
    K_t = S_t + G_t with S_t = ψ K_t carrying the singularity

    Args:
        k: Wave kernel
        regime: "large_t" (t >= 1/2) or "small_t"

    Returns:
        (S_t, G_t) on the kernel grid
    """
    psi, _ = split_cutoff(k.t, regime)
    singular = psi(k.s_grid) * k.values
    return (k.profile.with_values(singular, quantity="S", regime=regime),
            k.profile.with_values(k.values - singular, quantity="G", regime=regime))


def split_kernel_derivative(k: WaveKernel, regime: str) -> Tuple[RadialProfile, RadialProfile]:
    """(∂_sS_t, ∂_sG_t) from ∂(ψK) = ψ'K + ψK'"""
    psi, dpsi = split_cutoff(k.t, regime)
    s = k.s_grid
    singular = dpsi(s) * k.values + psi(s) * k.derivative_profile.values
    total = k.derivative_profile.values
    return (k.derivative_profile.with_values(singular, quantity="dS", regime=regime),
            k.derivative_profile.with_values(total - singular, quantity="dG", regime=regime))


def _eta(v):
    return 1.0 - smooth_transition(v - 1.0)


def _deta(v):
    return -smooth_transition_derivative(v - 1.0)


def _low_frequency_part(k: WaveKernel, s: float) -> Tuple[float, float]:
    """∫ η(λs) m cos(tλ) φ_λ(s) |c|^{-2} dλ and its s-derivative"""
    step = float(k.lam_grid[1] - k.lam_grid[0])
    lam = _odd_grid(0.0, 2.0 / s, min(step, 0.05 / s))
    table = spherical_table(k.p, lam, [s])
    weight = multiplier_values(k.symbol, lam) * plancherel_density(k.p, lam)
    eta = _eta(lam * s)
    rows = np.vstack([
        weight * eta * table.values[:, 0],
        weight * (_deta(lam * s) * lam * table.values[:, 0] + eta * table.derivatives[:, 0]),
    ])
    integral = filon_cos(rows, lam, np.full(2, k.t))
    return float(integral[0]), float(integral[1])


def split_small_t_singular(k: WaveKernel, derivative: bool = False,
                           threads: Optional[int] = None) -> Tuple[RadialProfile, RadialProfile]:
    """
    S_t = S_{1,t} + S_{2,t} for t < 1/2

    S_{1,t} = ψ_0(s) C_P ∫ η(λs) m(λ) cos(tλ) φ_λ(s) |c(λ)|^{-2} dλ keeps the
    frequencies λ <~ 1/s, where the kernel behaves like s^{-d-1}.

    Args:
        k: Small-t wave kernel
        derivative: Return (∂_sS_{1,t}, ∂_sS_{2,t}) instead
        threads: Worker count

    Returns:
        Pair of profiles on the kernel grid
    """
    psi, dpsi = split_cutoff(k.t, "small_t")
    s_grid = k.s_grid
    constant = plancherel_constant(k.p)
    active = [i for i, s in enumerate(s_grid) if 0 < s < 1.0]
    parts = ordered_map(lambda i: _low_frequency_part(k, float(s_grid[i])), active, threads)
    low = np.zeros(s_grid.size)
    dlow = np.zeros(s_grid.size)
    for i, (value, deriv) in zip(active, parts):
        low[i], dlow[i] = value, deriv
    first = constant * psi(s_grid) * low
    if not derivative:
        singular, _ = split_kernel(k, "small_t")
        return (k.profile.with_values(first, quantity="S1"),
                k.profile.with_values(singular.values - first, quantity="S2"))
    dfirst = constant * (dpsi(s_grid) * low + psi(s_grid) * dlow)
    dsingular, _ = split_kernel_derivative(k, "small_t")
    return (k.derivative_profile.with_values(dfirst, quantity="dS1"),
            k.derivative_profile.with_values(dsingular.values - dfirst, quantity="dS2"))


def atom_profile(a: Union[Atom, RadialProfile]) -> RadialProfile:
    """Radial profile of an origin-centered atom"""
    if isinstance(a, RadialProfile):
        return a
    if not a.is_radial:
        raise UnsupportedInputError("the propagator acts on atoms centered at the origin only")
    if a.profile is not None:
        return a.profile
    grid = np.linspace(0.0, a.radius, STEP_ATOM_POINTS)
    return RadialProfile(grid, a.radial_values(grid), {"atom": a.label})


def apply_Tt_to_atom(p: SpaceParams, m: SymbolLike, t: float, a: Union[Atom, RadialProfile],
                     lam_grid=None, s_grid=None) -> RadialProfile:
    """
    T_t a = inverse(m(λ) cos(tλ) · forward(a)) for a radial atom

    Args:
        p: Space parameters
        m: Bounded symbol
        t: Time
        a: Origin-centered atom or its radial profile
        lam_grid: Frequencies
        s_grid: Output radii; defaults to [0, |t| + r + 1] with spacing 0.01

    Returns:
        RadialProfile of T_t a
    """
    profile = atom_profile(a)
    if s_grid is None:
        extent = abs(t) + profile.s_max + TT_MARGIN
        s_grid = np.linspace(0.0, extent, int(math.ceil(extent / TT_STEP)) + 1)
    result = multiplier_apply(p, m, profile, lam_grid, s_grid, factor=lambda lam: np.cos(t * lam))
    return result.with_values(result.values, operation="wave", t=float(t))
