"""
Greedy r/3-nets on the hyperboloid and their covering multiplicity
"""
import logging
import math
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..exceptions import CertificationError, DomainError
from ..models.space import Annulus, ModelPoint, Net, SpaceParams
from ..utils.io import write_table
from .hyperboloid import minkowski, sample_region

logger = logging.getLogger(__name__)

# validation points may sit this much beyond r/3 before the budget is deemed too small
CERTIFICATION_SLACK = 1.5
CHUNK = 4096


def _as_coords(samples: Union[np.ndarray, Sequence[ModelPoint]]) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        return np.atleast_2d(samples)
    return np.array([point.coords for point in samples])


def _greedy_extend(centers: np.ndarray, count: int, candidates: np.ndarray, threshold: float) -> int:
    """Append candidates whose <x, c> exceeds threshold for every current center"""
    for x in candidates:
        if count == 0 or minkowski(centers[:count], x).min() > threshold:
            centers[count] = x
            count += 1
    return count


def _nearest_products(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Smallest <x, c> over centers, i.e. cosh of the nearest-center distance"""
    best = np.empty(points.shape[0])
    signature = np.ones(centers.shape[1])
    signature[0] = -1.0
    for start in range(0, points.shape[0], CHUNK):
        block = points[start:start + CHUNK]
        # <x, c> = x0 c0 - x.c ; smallest value is the nearest center
        products = -(block * signature) @ centers.T
        best[start:start + CHUNK] = products.min(axis=1)
    return best


def nearest_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Distance from each point to its nearest center"""
    return np.arccosh(np.maximum(_nearest_products(points, centers), 1.0))


def min_separation(centers: np.ndarray) -> float:
    """Smallest pairwise distance between centers (inf for a single center)"""
    if centers.shape[0] < 2:
        return math.inf
    best = math.inf
    for i in range(centers.shape[0] - 1):
        products = minkowski(centers[i + 1:], centers[i])
        best = min(best, float(np.arccosh(max(products.min(), 1.0))))
    return best


def build_net(p: SpaceParams, region: Annulus, r: float, sample_budget: int, seed: int = 0) -> Net:
    """
    Greedy maximal r/3-separated set over a quasi-random sample of the region

    A second, independently seeded sample certifies the covering radius; its
    uncovered points are then absorbed greedily so that both samples are
    covered within r/3.

    Args:
        p: Space parameters (m2 = 0)
        region: Bounded annulus or ball around the origin
        r: Mesh in (0, 1]
        sample_budget: Number of construction samples
        seed: Sampling seed

    Returns:
        Certified Net
    """
    if not p.has_model:
        raise DomainError("nets are built in the hyperboloid model, which needs m2 = 0")
    if not 0 < r <= 1:
        raise DomainError(f"net mesh must lie in (0, 1], got {r}")
    if region.upper == 0:
        origin = ModelPoint.origin(p.n).coords[None, :]
        return Net(origin, r, region, samples=origin.copy(), seed=seed)
    if sample_budget < 4:
        raise DomainError("sample budget must be at least 4")

    threshold = math.cosh(r / 3)
    training = sample_region(p, region.lower, region.upper, sample_budget, seed)
    centers = np.empty_like(training)
    count = _greedy_extend(centers, 0, training, threshold)

    validation = sample_region(p, region.lower, region.upper, max(sample_budget // 4, 1), seed + 1)
    gaps = nearest_distances(validation, centers[:count])
    worst = float(gaps.max())
    if worst > CERTIFICATION_SLACK * r / 3:
        raise CertificationError(
            f"covering radius {worst:.4f} exceeds {CERTIFICATION_SLACK} r/3 = {CERTIFICATION_SLACK * r / 3:.4f}; "
            f"raise the sample budget above {sample_budget}")
    uncovered = validation[gaps > r / 3]
    if uncovered.size:
        centers = np.concatenate([centers[:count], np.empty_like(uncovered)])
        count = _greedy_extend(centers, count, uncovered, threshold)

    centers = centers[:count].copy()
    samples = np.concatenate([training, validation])
    covering = float(nearest_distances(samples, centers).max())
    separation = min_separation(centers)
    logger.info(f"Net: {count} centers, mesh {r}, region [{region.lower:.3f}, {region.upper:.3f}], "
                f"separation {separation:.4f}, covering {covering:.4f} on {len(samples)} samples")
    return Net(centers, r, region, samples=samples, separation=separation,
               covering_radius=covering, seed=seed)


def ball_counts(net: Net, samples, radius: Optional[float] = None) -> np.ndarray:
    """Number of balls B(z, radius) (default: the mesh) containing each sample"""
    points = _as_coords(samples)
    threshold = math.cosh(net.mesh if radius is None else radius) * (1 + 1e-12)
    counts = np.zeros(points.shape[0], dtype=int)
    for start in range(0, points.shape[0], CHUNK):
        block = points[start:start + CHUNK]
        products = block[:, :1] * net.centers[:, 0] - block[:, 1:] @ net.centers[:, 1:].T
        counts[start:start + CHUNK] = (products <= threshold).sum(axis=1)
    return counts


def covering_multiplicity(net: Net, samples) -> int:
    """
    Maximal number of net balls B(z, r) containing a sample point

    Args:
        net: A net
        samples: Model points or an (N, n+1) coordinate array

    Returns:
        The multiplicity; 0 means some sample lies outside every ball
    """
    points = _as_coords(samples)
    if points.size == 0:
        raise DomainError("multiplicity needs at least one sample")
    counts = ball_counts(net, points)
    outside = int((counts == 0).sum())
    if outside:
        logger.warning(f"Net: {outside} of {len(counts)} samples lie outside every ball of radius {net.mesh}")
        if outside == len(counts):
            return 0
    return int(counts.max())


def write_net(net: Net, path: str) -> str:
    """Export centers as CSV rows (x0..xn, index)"""
    columns = {f"x{k}": net.centers[:, k] for k in range(net.centers.shape[1])}
    columns["index"] = np.arange(net.size)
    return write_table(pd.DataFrame(columns), path, "net")
