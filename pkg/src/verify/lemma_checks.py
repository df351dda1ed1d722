"""
Scans of the spherical-function and c-function estimates, and the L^2 -> L^q multiplier bounds
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import GridSpec
from ..exceptions import DomainError
from ..models.profile import RadialProfile
from ..models.report import BoundReport, RegionResult, ReportStatus
from ..models.space import SpaceParams
from ..propagator.symbols import Symbol, make_symbol
from ..specfun.cfunction import inverse_lambda_c_minus, lambda_c
from ..specfun.spherical import spherical_table
from ..transform.operations import forward, lp_norm, multiplier_apply, multiplier_values, plancherel_norm
from ..transform.plan import lam_grid_from, s_grid_from
from ..utils.analysis import central_derivative, fitted_constant
from ..utils.parallel import ordered_map
from .base import STABILITY_LIMIT, BoundCheck

logger = logging.getLogger(__name__)

# λ rows per tile of the spherical-function scan
TILE_ROWS = 16
TUBE_LEVELS = 5
DEFAULT_PROFILES = 10


def _tiles(lam: np.ndarray) -> List[np.ndarray]:
    return [lam[i:i + TILE_ROWS] for i in range(0, lam.size, TILE_ROWS)]


def _phi_samples(p: SpaceParams, lam: np.ndarray, s: np.ndarray, threads: Optional[int]) -> Dict[str, Tuple]:
    """(measured, envelope, mask) of the spherical-function regions on one (λ, s) grid"""
    tables = ordered_map(lambda chunk: spherical_table(p, chunk, s), _tiles(lam), threads)
    values = np.vstack([table.values for table in tables])
    derivatives = np.vstack([table.derivatives for table in tables])
    L, S = np.meshgrid(lam, s, indexing="ij")
    base = np.exp(-p.rho * S) * (1 + S)
    small = (S <= 1) & (S * np.abs(L) >= 1)
    with np.errstate(divide="ignore"):
        small_env = np.where(small, (S * (1 + np.abs(L))) ** (-p.d), 1.0)
    full = np.ones(L.shape, dtype=bool)
    return {
        "phi_l0": (values, base, full, "e^(-rho s)(1+s)"),
        "phi_l1": (derivatives, base * (1 + np.abs(L)), full, "e^(-rho s)(1+s)(1+|lambda|)"),
        "phi_small_s": (values, small_env, small, f"[s(1+|lambda|)]^({-p.d:g})"),
    }


def _c_samples(p: SpaceParams, lam: np.ndarray) -> Dict[str, Tuple]:
    """Derivative scans of λ^{-1}c(-λ)^{-1} on the tube and of λc(λ) on the real line"""
    heights = np.linspace(0.0, p.rho_prime, TUBE_LEVELS)
    tube = (lam[:, None] + 1j * heights[None, :]).ravel()
    real = lam.astype(complex)
    out = {}
    for alpha in (0, 1, 2):
        with np.errstate(all="ignore"):
            upper = central_derivative(lambda z: inverse_lambda_c_minus(p, z), tube, alpha)
            line = central_derivative(lambda z: lambda_c(p, z), real, alpha)
        weight_tube = (1 + np.abs(tube.real)) ** (p.d - 1 - alpha)
        weight_line = (1 + np.abs(lam)) ** (1 - p.d - alpha)
        out[f"c_inv_alpha{alpha}"] = (upper, weight_tube, np.ones(upper.shape, dtype=bool),
                                      f"(1+|Re lambda|)^({p.d - 1 - alpha:g})")
        out[f"lambda_c_alpha{alpha}"] = (line, weight_line, np.ones(line.shape, dtype=bool),
                                         f"(1+|lambda|)^({1 - p.d - alpha:g})")
    return out


def scan_constant(measured, envelope, mask) -> float:
    """Fitted constant of one scan; non-finite samples next to c-function poles are skipped"""
    measured = np.abs(np.asarray(measured)).ravel()
    keep = np.asarray(mask, dtype=bool).ravel() & np.isfinite(measured)
    return fitted_constant(measured, np.asarray(envelope, dtype=float).ravel(), keep)


def lemma51_scan(p: SpaceParams, lam: np.ndarray, s: np.ndarray,
                 threads: Optional[int] = None) -> Dict[str, Tuple]:
    """(measured, envelope, mask, label) of every scan region on one (λ, s) grid"""
    samples = _phi_samples(p, np.asarray(lam, dtype=float), np.asarray(s, dtype=float), threads)
    samples.update(_c_samples(p, np.asarray(lam, dtype=float)))
    return samples


def check_lemma51(p: SpaceParams, lam_max: float = 50.0, s_max: float = 10.0, lam_points: int = 201,
                  s_points: int = 201, threads: Optional[int] = None) -> BoundReport:
    """
    Fitted constants of the spherical-function and c-function estimates

    Regions: |φ_λ| and |∂_sφ_λ| against e^{-ρs}(1+s)(1+|λ|)^ℓ, the small-s
    bound [s(1+|λ|)]^{-d} for s <= 1 <= s|λ|, and the derivatives of
    λ^{-1}c(-λ)^{-1} on 0 <= Im λ <= ρ' and of λc(λ) on the real line.

    Args:
        p: Space parameters
        lam_max: Largest λ
        s_max: Largest s
        lam_points: λ samples of the base grid
        s_points: s samples of the base grid
        threads: Worker count over λ tiles

    Returns:
        BoundReport; the refined grid halves both steps
    """
    if lam_max <= 0 or s_max <= 0:
        raise DomainError("lemma scans need positive λ and s ranges")
    scans = []
    for factor in (1, 2):
        lam = np.linspace(0.0, lam_max, factor * (lam_points - 1) + 1)
        s = np.linspace(0.0, s_max, factor * (s_points - 1) + 1)
        scans.append(lemma51_scan(p, lam, s, threads))
    report = BoundReport("lemma51", p.to_dict(), metadata={
        "lam_max": lam_max, "s_max": s_max,
        "coarse": {"lam_points": lam_points, "s_points": s_points},
        "fine": {"lam_points": 2 * lam_points - 1, "s_points": 2 * s_points - 1},
        "rho_prime": p.rho_prime,
    })
    for name, (measured, envelope, mask, label) in scans[0].items():
        fine = scans[1][name]
        result = RegionResult(name, label, scan_constant(measured, envelope, mask),
                              scan_constant(*fine[:3]), int(np.count_nonzero(mask)),
                              n_excluded=int(np.count_nonzero(np.asarray(mask) & ~np.isfinite(measured))))
        _restatus(result)
        report.regions.append(result)
    logger.info(f"Spherical and c-function scans on {p.label}: {report.status.value.upper()}")
    return report


def _restatus(result: RegionResult) -> None:
    result.status = ReportStatus.PASS
    result.note = ""
    if not math.isfinite(result.constant) or result.stability > STABILITY_LIMIT:
        result.status = ReportStatus.FAIL
        result.note = f"constants {result.constant:.4g} / {result.constant_fine:.4g}"


def bump_profiles(count: int = DEFAULT_PROFILES, points: int = 401) -> List[RadialProfile]:
    """Smooth radial bumps (1 - (s/R)²)^k over a range of radii and powers"""
    radii = np.geomspace(0.25, 3.0, count)
    profiles = []
    for i, radius in enumerate(radii):
        power = 3 + (i % 3)
        grid = np.linspace(0.0, radius, points)
        values = (1 - (grid / radius) ** 2) ** power
        profiles.append(RadialProfile(grid, values, {"radius": float(radius), "power": power}))
    return profiles


def sobolev_exponents(p: SpaceParams, order: float) -> Tuple[float, float]:
    """
    Exponents (q, s) with 1/q = 1/2 + b/n and 1/s = 1/2 - b/n

    Raises:
        DomainError: b outside (-n/2, 0]
    """
    n = p.n
    if order > 0 or order <= -n / 2:
        raise DomainError(f"multiplier order must lie in (-n/2, 0] = ({-n / 2:g}, 0], got {order}")
    return 1.0 / (0.5 + order / n), 1.0 / (0.5 - order / n)


def _lq_ratios(p: SpaceParams, m: Symbol, profiles: Sequence[RadialProfile], grid: GridSpec,
               q: float, s_exp: float, threads: Optional[int]) -> Tuple[float, float]:
    lam = lam_grid_from(grid)
    out_grid = s_grid_from(grid)
    weights = multiplier_values(m, lam)

    def ratios(f: RadialProfile):
        image = multiplier_apply(p, m, f, lam, out_grid).real_part()
        spectrum = forward(p, f, lam)
        l2 = plancherel_norm(p, spectrum.with_values(spectrum.values * weights))
        return lp_norm(p, image, q) / lp_norm(p, f, 2.0), l2 / lp_norm(p, f, s_exp)

    values = ordered_map(ratios, list(profiles), threads)
    return max(v[0] for v in values), max(v[1] for v in values)


def check_multiplier_Lq(p: SpaceParams, m: Symbol, profiles: Optional[Sequence[RadialProfile]] = None,
                        grid: Optional[GridSpec] = None, threads: Optional[int] = None) -> BoundReport:
    """
    ‖U_m f‖_q / ‖f‖₂ and its dual ‖U_m f‖₂ / ‖f‖_s over a family of profiles

    Args:
        p: Space parameters
        m: Symbol of order b in (-n/2, 0]
        profiles: Test profiles; ten smooth bumps when None
        grid: Base grid (also run refined)
        threads: Worker count over profiles

    Returns:
        BoundReport with regions L2->Lq and Ls->L2
    """
    q, s_exp = sobolev_exponents(p, m.order)
    grid = grid or GridSpec()
    profiles = list(profiles) if profiles is not None else bump_profiles()
    coarse = _lq_ratios(p, m, profiles, grid, q, s_exp, threads)
    fine = _lq_ratios(p, m, profiles, grid.refined(), q, s_exp, threads)
    report = BoundReport("lq", p.to_dict(), metadata={
        "symbol": m.to_dict(), "q": q, "s": s_exp, "profiles": len(profiles),
        "sup_m": m.sup_norm(lam_grid_from(grid)),
    })
    names = ("L2->Lq", "Ls->L2")
    labels = (f"||f||_2, q = {q:.6g}", f"||f||_{s_exp:.6g}")
    for name, label, a, b in zip(names, labels, coarse, fine):
        result = RegionResult(name, label, a, b, len(profiles))
        _restatus(result)
        report.regions.append(result)
    logger.info(f"Multiplier bounds q={q:.4g}, s={s_exp:.4g} on {p.label}: {report.status.value.upper()}")
    return report


class Lemma51Check(BoundCheck):
    """Spherical-function and c-function estimates"""

    name = "lemma51"

    def run(self, symbol: Optional[Symbol] = None, t: Optional[float] = None,
            t_list: Optional[List[float]] = None) -> BoundReport:
        return check_lemma51(self.p, threads=self.threads)


class MultiplierLqCheck(BoundCheck):
    """L^2 -> L^q bounds of U_m and the dual statement"""

    name = "lq"

    def default_symbol(self) -> Symbol:
        return make_symbol("rational_power", -self.p.d, self.p.rho)

    def run(self, symbol: Optional[Symbol] = None, t: Optional[float] = None,
            t_list: Optional[List[float]] = None) -> BoundReport:
        return check_multiplier_Lq(self.p, symbol or self.default_symbol(), grid=self.config.grid,
                                   threads=self.threads)
