"""
Convolution bounds for atoms and two-sided h1 brackets
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..config import DEFAULT_SEED, HardyOptions, Tolerances
from ..exceptions import BracketError, DomainError, SupportLeakError
from ..geometry.measure import annulus_measure, ball_measure, radial_integral
from ..models.atom import Atom, AtomicDecomposition, AtomKind
from ..models.profile import RadialProfile
from ..models.space import Annulus, SpaceParams
from ..propagator.cutoffs import CutoffKind, CutoffPartition
from ..propagator.kernel import WaveKernel, atom_profile
from ..transform.operations import forward, gradient_norm, lp_norm, plancherel_norm, radial_convolve
from .decompose import QMC_CANCELLATION, ModelFunction, _sample_norms, decompose_annulus, decompose_ball

logger = logging.getLogger(__name__)

# values beyond r + β must stay below this share of the peak
SUPPORT_LEAK = 1e-3
BOUND_SLACK = 1e-6
BRACKET_SLACK = {"quadrature": 1e-6, "qmc": 1e-3}


@dataclass
class ConvolutionBound:
    """Right-hand sides of the atom-convolution estimates next to the measured ‖a∗γ‖₂"""
    kind: AtomKind
    r: float
    beta: float
    gamma_l2: float
    gradient_bound: float
    l1_bound: float
    ball_factor: float
    measured: float
    support: float

    @property
    def bound(self) -> float:
        """min(‖γ‖₂, r‖∇γ‖₂) for standard atoms, ‖a‖₁‖γ‖₂ for global ones"""
        if self.kind is AtomKind.STANDARD:
            return min(self.gamma_l2, self.gradient_bound)
        return self.l1_bound

    @property
    def h1_bound(self) -> float:
        """μ(B(o, r+β))^{1/2} times the L² bound"""
        return self.ball_factor * self.bound

    @property
    def passed(self) -> bool:
        slack = 1 + BOUND_SLACK
        ok = self.measured <= self.gamma_l2 * slack + 1e-14
        if self.kind is AtomKind.STANDARD:
            ok = ok and self.measured <= self.gradient_bound * slack + 1e-14
        else:
            ok = ok and self.measured <= self.l1_bound * slack + 1e-14
        return ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "r": self.r,
            "beta": self.beta,
            "gamma_l2": self.gamma_l2,
            "gradient_bound": self.gradient_bound,
            "l1_bound": self.l1_bound,
            "ball_factor": self.ball_factor,
            "measured": self.measured,
            "support": self.support,
            "bound": self.bound,
            "h1_bound": self.h1_bound,
            "passed": self.passed,
        }


def conv_atom_bound(p: SpaceParams, a: Union[Atom, RadialProfile], gamma: RadialProfile,
                    lam_grid=None, s_grid=None, kind: Optional[AtomKind] = None) -> ConvolutionBound:
    """
    Measured ‖a∗γ‖₂ against ‖γ‖₂, r‖∇γ‖₂ and ‖a‖₁‖γ‖₂

    Args:
        p: Space parameters
        a: Origin-centered atom (or its profile, with kind given)
        gamma: Radial profile supported in [0, β]
        lam_grid: Frequencies of the spectral convolution
        s_grid: Output radii of the convolution
        kind: Atom kind when a is a bare profile

    Returns:
        ConvolutionBound

    Raises:
        SupportLeakError: a∗γ is visibly nonzero beyond r + β
    """
    profile = atom_profile(a)
    if isinstance(a, Atom):
        kind, r = a.kind, a.radius
    else:
        kind = kind or AtomKind.STANDARD
        r = profile.support_radius()
    beta = gamma.support_radius()
    gamma_l2 = lp_norm(p, gamma, 2.0)
    conv = radial_convolve(p, profile, gamma, lam_grid, s_grid).real_part()
    measured = lp_norm(p, conv, 2.0)
    values = np.abs(conv.values)
    peak = float(values.max()) if values.size else 0.0
    if peak > 0:
        step = float(np.max(np.diff(conv.s_grid)))
        limit = r + beta + 2 * step
        beyond = values[conv.s_grid > limit]
        if beyond.size and float(beyond.max()) > SUPPORT_LEAK * peak:
            raise SupportLeakError(
                f"a∗γ reaches {float(beyond.max()):.3e} beyond r + β = {r + beta:.4g} (peak {peak:.3e})")
    result = ConvolutionBound(
        kind=kind,
        r=r,
        beta=beta,
        gamma_l2=gamma_l2,
        gradient_bound=r * gradient_norm(p, gamma),
        l1_bound=lp_norm(p, profile, 1.0) * gamma_l2,
        ball_factor=math.sqrt(ball_measure(p, r + beta)) if r + beta > 0 else 0.0,
        measured=measured,
        support=conv.support_radius(SUPPORT_LEAK * peak) if peak > 0 else 0.0,
    )
    logger.debug(f"Convolution bound r={r:g}, β={beta:g}: measured {measured:.4e}, bound {result.bound:.4e}")
    return result


@dataclass
class H1Bracket:
    """‖f‖₁ <= ‖f‖_{h1} <= upper, with the decomposition behind the upper value"""
    lower: float
    upper: float
    route: str
    decomposition: Optional[AtomicDecomposition] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {"lower": self.lower, "upper": self.upper, "route": self.route}
        if self.decomposition is not None:
            data["constants"] = dict(self.decomposition.constants)
            data["terms"] = len(self.decomposition)
        return data


def _radial_support(f: RadialProfile):
    nonzero = np.nonzero(np.real(f.values) != 0)[0]
    grid = f.s_grid
    inner = float(grid[max(nonzero[0] - 1, 0)])
    outer = float(grid[min(nonzero[-1] + 1, grid.size - 1)])
    return inner, outer


def h1_bracket(p: SpaceParams, f: Union[RadialProfile, Atom, ModelFunction], support: Optional[Annulus] = None,
               options: Optional[HardyOptions] = None, tolerances: Optional[Tolerances] = None,
               seed: int = DEFAULT_SEED, threads: Optional[int] = None) -> H1Bracket:
    """
    Two-sided bracket of ‖f‖_{h1}

    The lower value is ‖f‖₁. The upper value is the total of a constructive
    decomposition chosen by the support: a ball around the origin, or a
    thin annulus when f has vanishing integral.

    Args:
        p: Space parameters
        f: Radial profile, origin-centered atom, or model function with support given
        support: Annulus containing the support of a model function
        options: QMC and net budgets
        tolerances: Cancellation tolerance
        seed: Net and QMC seed
        threads: Worker count

    Returns:
        H1Bracket
    """
    tol = tolerances or Tolerances()
    options = options or HardyOptions()
    if isinstance(f, Atom):
        f = atom_profile(f)
    if isinstance(f, RadialProfile):
        values = np.real(f.values)
        if not np.any(values):
            return H1Bracket(0.0, 0.0, "zero")
        lower = lp_norm(p, f.with_values(values), 1.0)
        integral = float(radial_integral(p, f.s_grid, values))
        inner, outer = _radial_support(f)
        method = "quadrature"
        allowed = tol.cancellation
    else:
        if support is None or not math.isfinite(support.upper):
            raise DomainError("model functions need a bounded ball or annulus support")
        inner, outer = support.lower, support.upper
        count = max(4096, options.qmc_points_per_ball)
        integral, lower, _ = _sample_norms(p, f, inner, outer, count, seed)
        if lower == 0:
            return H1Bracket(0.0, 0.0, "zero")
        method = "qmc"
        allowed = QMC_CANCELLATION

    mean_zero = abs(integral) <= allowed * lower
    half_width = (outer - inner) / 2
    middle = (outer + inner) / 2
    if inner > 0 and mean_zero and half_width <= 1 and middle > half_width:
        route = "annulus"
        decomposition = decompose_annulus(p, f, middle, half_width, options, tol, seed, threads)
    else:
        route = "ball"
        radius = outer if (outer >= 1 or mean_zero) else 1.0
        decomposition = decompose_ball(p, f, radius, options, tol, seed, threads)
    upper = decomposition.total
    if lower > upper * (1 + BRACKET_SLACK[method]) + 1e-14:
        raise BracketError(f"‖f‖₁ = {lower:.6g} exceeds the decomposition total {upper:.6g}")
    logger.info(f"h1 bracket via {route}: [{lower:.6g}, {upper:.6g}]")
    return H1Bracket(lower, upper, route, decomposition)


@dataclass
class PieceBound:
    """h1 upper bound of a∗(κ K_t) for one cutoff piece κ"""
    label: str
    kind: str
    support: List[float]
    l2: float
    bound: float
    route: str

    def to_dict(self) -> Dict[str, Any]:
        return {"label": self.label, "kind": self.kind, "support": self.support,
                "l2": self.l2, "bound": self.bound, "route": self.route}


def piece_h1_bound(p: SpaceParams, lo: float, hi: float, r: float, l2: float, standard: bool):
    """
    h1 bound for a function supported in A_{lo-r}^{hi+r} with L² norm l2

    Pieces near the origin (or convolved with a global atom) go through the
    ball estimate μ(B(o, max(hi + r, 1)))^{1/2} l2; mean-zero pieces on thin
    annuli of half-width w <= 1 through (1 + log(1/w)) μ(A)^{1/2} l2.
    """
    inner, outer = max(lo - r, 0.0), hi + r
    width = (outer - inner) / 2
    if standard and lo > r and width <= 1 and inner > 0:
        measure = annulus_measure(p, Annulus((inner + outer) / 2, width))
        return (1 + math.log(1 / width)) * math.sqrt(measure) * l2, "annulus"
    return math.sqrt(ball_measure(p, max(outer, 1.0))) * l2, "ball"


def wave_h1_upper(p: SpaceParams, a: Atom, kernel: WaveKernel, partition: CutoffPartition,
                  wave_l2: float, lam_grid=None):
    """
    Upper h1 bound of T_t a from the cutoff splitting of K_t

    Every non-singular piece κ contributes ‖a∗(κK_t)‖₂ through piece_h1_bound;
    the singular complement σ uses ‖a∗(σK_t)‖₂ <= ‖T_t a‖₂ + Σ_κ ‖a∗(κK_t)‖₂.

    Args:
        p: Space parameters
        a: Origin-centered atom
        kernel: K_t on a grid covering [0, partition.s_limit]
        partition: Cutoff partition for (r, t)
        wave_l2: ‖T_t a‖₂
        lam_grid: Frequencies

    Returns:
        (total, list of PieceBound)
    """
    profile = atom_profile(a)
    standard = a.kind is AtomKind.STANDARD
    r = a.radius
    spectrum = forward(p, profile, lam_grid if lam_grid is not None else kernel.lam_grid)
    s = kernel.s_grid
    pieces = []
    singular = []
    others = 0.0
    for piece in partition.pieces:
        if piece.kind is CutoffKind.SINGULAR_COMPLEMENT:
            singular.append(piece)
            continue
        gamma = kernel.profile.with_values(piece(s) * kernel.values)
        l2 = plancherel_norm(p, spectrum * forward(p, gamma, spectrum.lam_grid))
        others += l2
        lo, hi = piece.support[0], min(piece.support[1], float(s[-1]))
        bound, route = piece_h1_bound(p, lo, hi, r, l2, standard)
        pieces.append(PieceBound(piece.name, piece.kind.value, [lo, hi], l2, bound, route))
    for piece in singular:
        l2 = wave_l2 + others
        lo, hi = piece.support
        bound, route = piece_h1_bound(p, lo, hi, r, l2, standard)
        pieces.append(PieceBound(piece.name, piece.kind.value, [lo, hi], l2, bound, route))
    total = float(sum(item.bound for item in pieces))
    return total, pieces
