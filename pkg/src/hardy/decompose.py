"""
Constructive atomic decompositions of L² functions on balls and annuli

Both constructions follow the covering arguments for h1: a net of the
support, a partition of unity subordinate to its balls, and either one
global atom per ball (balls of radius >= 1) or a telescoping chain of
mean-zero atoms on growing concentric balls (thin annuli).
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Union

import numpy as np

from ..config import DEFAULT_SEED, HardyOptions, Tolerances
from ..exceptions import DomainError, PreconditionError, UnsupportedInputError
from ..geometry.hyperboloid import ball_sample, distances, minkowski, sample_region
from ..geometry.measure import annulus_measure, ball_measure, radial_integral
from ..geometry.nets import build_net
from ..models.atom import Atom, AtomicDecomposition, AtomKind, DecompositionTerm
from ..models.profile import RadialProfile
from ..models.space import Annulus, ModelPoint, Net, SpaceParams
from ..utils.parallel import ordered_map
from .atoms import points_per_ball, step_atom, validate_atom

logger = logging.getLogger(__name__)

RECONSTRUCTION_POINTS = 4096
# indicator slack on d(x, z) <= radius
BALL_SLACK = 1e-12
# cancellation accepted for model functions integrated by QMC
QMC_CANCELLATION = 1e-3

ModelFunction = Callable[[np.ndarray], np.ndarray]
Input = Union[RadialProfile, ModelFunction]


def as_model_function(f: Input) -> ModelFunction:
    """Evaluate a radial profile at hyperboloid points through d(x, o)"""
    if isinstance(f, RadialProfile):
        def radial(points):
            points = np.atleast_2d(points)
            radii = np.arccosh(np.maximum(points[:, 0], 1.0))
            return np.real(f.evaluate(radii))
        return radial
    return f


def _in_ball(points: np.ndarray, center: np.ndarray, radius: float) -> np.ndarray:
    return minkowski(points, center) <= math.cosh(radius) * (1 + BALL_SLACK)


@dataclass
class _Cover:
    """Net balls B(z_j, radius) with neighbor lists for overlap counts"""
    centers: np.ndarray
    radius: float
    neighbors: List[np.ndarray]

    @classmethod
    def build(cls, net: Net, radius: float) -> "_Cover":
        centers = net.centers
        reach = math.cosh(2 * radius) * (1 + BALL_SLACK)
        neighbors = []
        for j in range(centers.shape[0]):
            products = minkowski(centers, centers[j])
            neighbors.append(np.nonzero(products <= reach)[0])
        return cls(centers, radius, neighbors)

    def partition(self, j: int, points: np.ndarray) -> np.ndarray:
        """ψ_j = χ_{B_j} / Σ_k χ_{B_k} at points"""
        inside = _in_ball(points, self.centers[j], self.radius)
        weights = np.zeros(points.shape[0])
        if inside.any():
            local = points[inside]
            counts = np.zeros(local.shape[0])
            for k in self.neighbors[j]:
                counts += _in_ball(local, self.centers[k], self.radius)
            weights[inside] = 1.0 / np.maximum(counts, 1.0)
        return weights

    def restrict(self, j: int, fn: ModelFunction, points: np.ndarray) -> np.ndarray:
        """f ψ_j at points, evaluating f inside B_j only"""
        weights = self.partition(j, points)
        out = np.zeros(points.shape[0])
        active = weights > 0
        if active.any():
            out[active] = np.asarray(fn(points[active]), dtype=float) * weights[active]
        return out


def _sample_norms(p: SpaceParams, fn: ModelFunction, lower: float, upper: float, count: int, seed: int):
    """(∫f, ‖f‖₁, ‖f‖₂) on an annulus or ball by the QMC rule"""
    points = sample_region(p, lower, upper, count, seed)
    weight = (annulus_measure(p, Annulus((lower + upper) / 2, (upper - lower) / 2))
              if lower > 0 else ball_measure(p, upper)) / count
    values = np.asarray(fn(points), dtype=float)
    return (float(weight * values.sum()), float(weight * np.abs(values).sum()),
            math.sqrt(float(weight * (values ** 2).sum())))


def _input_norms(p: SpaceParams, f: Input, lower: float, upper: float, count: int, seed: int):
    if isinstance(f, RadialProfile):
        values = np.real(f.values)
        return (float(radial_integral(p, f.s_grid, values)),
                float(radial_integral(p, f.s_grid, np.abs(values))),
                math.sqrt(max(float(radial_integral(p, f.s_grid, values ** 2)), 0.0)))
    return _sample_norms(p, f, lower, upper, count, seed)


def _reconstruction_error(p: SpaceParams, fn: ModelFunction, terms: List[DecompositionTerm],
                          lower: float, upper: float, seed: int) -> float:
    """Relative L² error of Σ c_j a_j against f on a QMC sample"""
    points = sample_region(p, lower, upper, RECONSTRUCTION_POINTS, seed + 11)
    target = np.asarray(fn(points), dtype=float)
    total = np.zeros_like(target)
    for term in terms:
        total += term.coefficient * _atom_values(term.atom, points)
    scale = math.sqrt(float(np.mean(target ** 2)))
    error = math.sqrt(float(np.mean((total - target) ** 2)))
    return error / scale if scale > 0 else error


def _atom_values(a: Atom, points: np.ndarray) -> np.ndarray:
    if a.function is not None:
        return np.asarray(a.function(points), dtype=float)
    center = a.center.coords if a.center is not None else ModelPoint.origin(points.shape[1] - 1).coords
    return a.radial_values(distances(points, center))


def decompose_ball(p: SpaceParams, f: Input, R: float, options: Optional[HardyOptions] = None,
                   tolerances: Optional[Tolerances] = None, seed: int = DEFAULT_SEED,
                   threads: Optional[int] = None) -> AtomicDecomposition:
    """
    Atomic decomposition of f supported in B(o, R)

    For R >= 1 a 1/3-net of B(o, R) gives balls B_j = B(z_j, 1), the
    partition ψ_j = χ_{B_j}/Σ_k χ_{B_k}, and global atoms f_j/(μ(B_j)^{1/2}‖f_j‖₂)
    with f_j = f ψ_j. For R < 1 a mean-zero f is itself a multiple of a
    standard atom.

    Args:
        p: Space parameters (m2 = 0)
        f: Radial profile or function of hyperboloid points
        R: Support radius
        options: QMC and net budgets
        tolerances: Cancellation tolerance
        seed: Net and QMC seed
        threads: Worker count over net balls

    Returns:
        AtomicDecomposition with constant C = total / (μ(B)^{1/2} ‖f‖₂)
    """
    options = options or HardyOptions()
    tol = tolerances or Tolerances()
    if not R > 0:
        raise DomainError(f"support radius must be positive, got {R}")
    fn = as_model_function(f)
    count = points_per_ball(p, R, options.qmc_points_per_ball)
    integral, l1, l2 = _input_norms(p, f, 0.0, R, count, seed)
    meta = {"shape": "ball", "R": R, "space": p.label, "seed": seed}
    if l2 == 0:
        return AtomicDecomposition([], {"C": 0.0}, 0.0, meta)
    measure = ball_measure(p, R)

    if R < 1:
        allowed = tol.cancellation if isinstance(f, RadialProfile) else QMC_CANCELLATION
        if abs(integral) > allowed * l1:
            raise UnsupportedInputError(
                f"f on B(o, {R}) with R < 1 needs a vanishing integral, got {integral:.3e}")
        coefficient = math.sqrt(measure) * l2
        if isinstance(f, RadialProfile):
            atom = Atom(AtomKind.STANDARD, R, profile=f.with_values(np.real(f.values) / coefficient),
                        label="single_atom")
        else:
            atom = Atom(AtomKind.STANDARD, R, function=lambda x, c=coefficient: fn(x) / c,
                        center=ModelPoint.origin(p.n), label="single_atom")
        terms = [DecompositionTerm(coefficient, atom)]
        return AtomicDecomposition(terms, {"C": 1.0}, 0.0, meta)

    net = build_net(p, Annulus.ball(R), 1.0, options.net_budget, seed)
    cover = _Cover.build(net, 1.0)
    unit_measure = ball_measure(p, 1.0)
    per_ball = points_per_ball(p, 1.0, options.qmc_points_per_ball)

    def piece(j: int) -> Optional[DecompositionTerm]:
        center = cover.centers[j]
        points, weights = ball_sample(p, center, 1.0, per_ball, seed)
        values = cover.restrict(j, fn, points)
        norm = math.sqrt(float(np.sum(weights * values ** 2)))
        if norm == 0:
            return None
        coefficient = math.sqrt(unit_measure) * norm

        def atom_fn(x, j=j, c=coefficient):
            x = np.atleast_2d(x)
            return cover.restrict(j, fn, x) / c

        atom = Atom(AtomKind.GLOBAL, 1.0, function=atom_fn, center=ModelPoint(center.copy()),
                    label=f"ball_{j}")
        return DecompositionTerm(coefficient, atom, level=0, index=j)

    terms = [term for term in ordered_map(piece, range(net.size), threads) if term is not None]
    error = _reconstruction_error(p, fn, terms, 0.0, R, seed)
    decomposition = AtomicDecomposition(terms, {}, error, dict(meta, net_size=net.size))
    decomposition.constants["C"] = decomposition.total / (math.sqrt(measure) * l2)
    decomposition.constants["net_size"] = float(net.size)
    logger.info(f"Ball decomposition of radius {R}: {len(terms)} global atoms, "
                f"total {decomposition.total:.6g}, C = {decomposition.constants['C']:.4g}")
    return decomposition


def dyadic_levels(r: float) -> int:
    """Lowest K with 2^K r > 1"""
    k = 0
    while 2.0 ** k * r <= 1:
        k += 1
    return k


def decompose_annulus(p: SpaceParams, f: Input, R: float, r: float,
                      options: Optional[HardyOptions] = None, tolerances: Optional[Tolerances] = None,
                      seed: int = DEFAULT_SEED, threads: Optional[int] = None) -> AtomicDecomposition:
    """
    Telescoping decomposition of a mean-zero f supported in A_{R-r}^{R+r}

    With an r/3-net z_j, B_j^k = B(z_j, 2^k r), ψ_j subordinate to B_j^0 and
    φ_j^k = χ_{B_j^k}/μ(B_j^k), the pieces are
    a_j^0 = f ψ_j - φ_j^0 ∫f ψ_j, a_j^k = (φ_j^{k-1} - φ_j^k) ∫f ψ_j for
    0 < k < K, and a_j^K = φ_j^{K-1} ∫f ψ_j.

    Args:
        p: Space parameters (m2 = 0)
        f: Radial profile or function of hyperboloid points
        R: Middle radius of the annulus
        r: Half-width in (0, 1], R > r
        options: QMC and net budgets
        tolerances: Cancellation tolerance
        seed: Net and QMC seed
        threads: Worker count over net balls

    Returns:
        AtomicDecomposition with constant C = total / (log(1/r) e^{ρR} r^{1/2} ‖f‖₂)
    """
    options = options or HardyOptions()
    tol = tolerances or Tolerances()
    if not 0 < r <= 1:
        raise DomainError(f"annulus half-width must lie in (0, 1], got {r}")
    if not R > r:
        raise DomainError(f"annulus needs R > r, got R={R}, r={r}")
    fn = as_model_function(f)
    annulus = Annulus(R, r)
    count = max(RECONSTRUCTION_POINTS, points_per_ball(p, R + r, options.qmc_points_per_ball))
    integral, l1, l2 = _input_norms(p, f, annulus.lower, annulus.upper, count, seed)
    allowed = tol.cancellation if isinstance(f, RadialProfile) else QMC_CANCELLATION
    if abs(integral) > allowed * max(l1, 1e-300):
        raise PreconditionError(f"f must have vanishing integral on the annulus, got {integral:.3e}")
    meta = {"shape": "annulus", "R": R, "r": r, "space": p.label, "seed": seed}
    if l2 == 0:
        return AtomicDecomposition([], {"C": 0.0}, 0.0, meta)

    net = build_net(p, annulus, r, options.net_budget, seed)
    cover = _Cover.build(net, r)
    levels = dyadic_levels(r)
    radii = [2.0 ** k * r for k in range(levels)]
    measures = [ball_measure(p, radius) for radius in radii]
    per_ball = points_per_ball(p, r, options.qmc_points_per_ball)

    def chain(j: int) -> List[DecompositionTerm]:
        center = cover.centers[j]
        where = ModelPoint(center.copy())
        points, weights = ball_sample(p, center, r, per_ball, seed)
        local = cover.restrict(j, fn, points)
        mass = float(np.sum(weights * local))
        terms = []
        # a^0 = f ψ_j - φ^0 ∫ f ψ_j
        base = local - mass / measures[0]
        norm = math.sqrt(float(np.sum(weights * base ** 2)))
        if norm > 0:
            c0 = math.sqrt(measures[0]) * norm

            def first(x, j=j, m=mass, c=c0):
                x = np.atleast_2d(x)
                inside = _in_ball(x, cover.centers[j], r)
                return (cover.restrict(j, fn, x) - np.where(inside, m / measures[0], 0.0)) / c

            terms.append(DecompositionTerm(c0, Atom(AtomKind.STANDARD, r, function=first, center=where,
                                                    label=f"a_{j}^0"), level=0, index=j))
        if mass == 0:
            return terms
        for k in range(1, levels):
            inner, outer = measures[k - 1], measures[k]
            heights = np.array([mass / inner, -mass / outer])
            shell = [mass / inner - mass / outer, -mass / outer]
            norm = math.sqrt(shell[0] ** 2 * inner + shell[1] ** 2 * (outer - inner))
            coefficient = math.sqrt(outer) * norm
            atom = step_atom(p, [radii[k - 1], radii[k]], heights / coefficient, AtomKind.STANDARD,
                             center=where, label=f"a_{j}^{k}")
            terms.append(DecompositionTerm(coefficient, atom, level=k, index=j))
        top = measures[levels - 1]
        coefficient = math.sqrt(ball_measure(p, 1.0)) * abs(mass) / math.sqrt(top)
        atom = step_atom(p, [radii[levels - 1]], [mass / top / coefficient], AtomKind.GLOBAL,
                         center=where, radius=1.0, label=f"a_{j}^{levels}")
        terms.append(DecompositionTerm(coefficient, atom, level=levels, index=j))
        return terms

    terms = [term for group in ordered_map(chain, range(net.size), threads) for term in group]
    error = _reconstruction_error(p, fn, terms, max(annulus.lower - r, 0.0), annulus.upper + r, seed)
    decomposition = AtomicDecomposition(terms, {}, error, dict(meta, net_size=net.size, levels=levels))
    scale = max(math.log(1 / r), math.log(2)) * math.exp(p.rho * R) * math.sqrt(r) * l2
    decomposition.constants.update({
        "C": decomposition.total / scale,
        "net_size": float(net.size),
        "net_scaled": net.size * r ** (p.n - 1) * math.exp(-2 * p.rho * R),
        "levels": float(levels),
    })
    logger.info(f"Annulus decomposition R={R}, r={r}: {net.size} centers, {len(terms)} atoms, "
                f"total {decomposition.total:.6g}, C = {decomposition.constants['C']:.4g}")
    return decomposition


def validate_decomposition(p: SpaceParams, decomposition: AtomicDecomposition,
                           options: Optional[HardyOptions] = None,
                           tolerances: Optional[Tolerances] = None, seed: int = DEFAULT_SEED):
    """Validation reports of every emitted atom, with the same QMC rule as the construction"""
    options = options or HardyOptions()
    reports = []
    for term in decomposition.terms:
        atom = term.atom
        points = points_per_ball(p, atom.radius, options.qmc_points_per_ball)
        reports.append(validate_atom(p, atom, tolerances, points=points, seed=seed))
    return reports
