"""
Smooth radial cutoff families and the partition of unity around the sphere |x| = t

The partition combines dyadic rings φ_i around the origin, rings η_h and
ω_h on either side of the sphere, unit rings ψ_j far out, the singular
complement σ near the sphere, and bridge pieces that fill the gaps
between consecutive groups. The pieces sum to one on [0, s_limit].
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..exceptions import DomainError
from ..utils.analysis import smooth_transition, smooth_transition_derivative

logger = logging.getLogger(__name__)

# sample density used to drop bridges that vanish identically
BRIDGE_SAMPLES = 2001
BRIDGE_FLOOR = 1e-12

RadialFn = Callable[[np.ndarray], np.ndarray]


class CutoffKind(Enum):
    """Kinds of radial cutoffs"""
    DYADIC_PHII = "dyadic_phii"
    INNER_ETAH = "inner_etah"
    OUTER_OMEGAH = "outer_omegah"
    UNIT_PSIJ = "unit_psij"
    SINGULAR_COMPLEMENT = "singular_complement"
    ANNULAR_BRIDGE = "annular_bridge"


def chi(x):
    return smooth_transition(x)


def dchi(x):
    return smooth_transition_derivative(x)


def base_bump(x) -> np.ndarray:
    """
    Fixed bump φ: rises on [3/4, 1], equals 1 on [1, 3/2], falls on [3/2, 2]

    φ(s) = 1 - φ(s/2) holds for every s in (1, 2).
    """
    x = np.asarray(x, dtype=float)
    rising = chi((x - 0.75) / 0.25)
    falling = 1.0 - chi((x - 1.5) / 0.5)
    return np.where(x <= 1.0, rising, np.where(x <= 2.0, falling, 0.0))


def base_bump_derivative(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    rising = dchi((x - 0.75) / 0.25) / 0.25
    falling = -dchi((x - 1.5) / 0.5) / 0.5
    return np.where(x <= 1.0, rising, np.where(x <= 2.0, falling, 0.0))


def unit_bump(x) -> np.ndarray:
    """
    Fixed bump ψ supported in [1/3, 5/3] with ψ(s + 1) = 1 - ψ(s) on [0, 1]
    """
    x = np.asarray(x, dtype=float)
    rising = chi((x - 1.0 / 3.0) * 3.0)
    falling = 1.0 - chi((x - 4.0 / 3.0) * 3.0)
    return np.where(x < 0, 0.0, np.where(x <= 1.0, rising, np.where(x <= 2.0, falling, 0.0)))


def unit_bump_derivative(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    rising = 3.0 * dchi((x - 1.0 / 3.0) * 3.0)
    falling = -3.0 * dchi((x - 4.0 / 3.0) * 3.0)
    return np.where(x < 0, 0.0, np.where(x <= 1.0, rising, np.where(x <= 2.0, falling, 0.0)))


@lru_cache(maxsize=None)
def gradient_constant() -> float:
    """C = max |φ'| over the fixed bump, so that |∇φ_i| <= C (2^i r)^{-1}"""
    x = np.linspace(0.5, 2.0, 60001)
    return float(np.max(np.abs(base_bump_derivative(x))))


@dataclass(frozen=True, eq=False)
class RadialCutoff:
    """One smooth radial piece of a partition"""
    kind: CutoffKind
    index: int
    support: Tuple[float, float]
    fn: RadialFn
    dfn: RadialFn
    scale: float = 1.0
    label: str = ""

    def __call__(self, s) -> np.ndarray:
        return self.fn(np.asarray(s, dtype=float))

    def derivative(self, s) -> np.ndarray:
        return self.dfn(np.asarray(s, dtype=float))

    @property
    def name(self) -> str:
        return self.label or f"{self.kind.value}[{self.index}]"

    def to_dict(self) -> Dict:
        return {"kind": self.kind.value, "index": self.index, "label": self.name,
                "support": list(self.support), "scale": self.scale}


@dataclass
class CutoffFamily:
    """All pieces of one kind in a partition"""
    kind: CutoffKind
    r: float
    t: float
    pieces: List[RadialCutoff] = field(default_factory=list)
    index_range: Optional[Tuple[int, int]] = None

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        total = np.zeros(s.shape)
        for piece in self.pieces:
            total = total + piece(s)
        return total

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def __len__(self) -> int:
        return len(self.pieces)


@dataclass
class _Group:
    """Consecutive pieces whose sum equals 1 on a plateau"""
    pieces: List[RadialCutoff]
    plateau: Tuple[float, float]


@dataclass
class CutoffPartition:
    """Exact partition of unity on [0, s_limit] adapted to the sphere |x| = t"""
    r: float
    t: float
    case: str
    pieces: List[RadialCutoff]
    indices: Dict[str, int]
    s_limit: float

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        total = np.zeros(s.shape)
        for piece in self.pieces:
            total = total + piece(s)
        return total

    def family(self, kind: CutoffKind) -> CutoffFamily:
        pieces = [piece for piece in self.pieces if piece.kind is kind]
        indices = [piece.index for piece in pieces]
        index_range = (min(indices), max(indices)) if indices else None
        return CutoffFamily(kind, self.r, self.t, pieces, index_range)

    def to_dict(self) -> Dict:
        return {"r": self.r, "t": self.t, "case": self.case, "indices": dict(self.indices),
                "pieces": [piece.to_dict() for piece in self.pieces]}


def _dyadic(i: int, r: float) -> RadialCutoff:
    width = 2.0 ** i * r
    return RadialCutoff(
        CutoffKind.DYADIC_PHII, i, (0.75 * width, 2 * width),
        lambda s, w=width: base_bump(s / w),
        lambda s, w=width: base_bump_derivative(s / w) / w,
        scale=width, label=f"phi_{i}")


def _inner_core(width: float, scale: Optional[float] = None) -> RadialCutoff:
    """1 - φ(s/width) on [0, width], which completes φ(s/width) near the origin"""
    def fn(s, w=width):
        return np.where(s < w, 1.0 - base_bump(s / w), 0.0)

    def dfn(s, w=width):
        return np.where(s < w, -base_bump_derivative(s / w) / w, 0.0)

    return RadialCutoff(CutoffKind.DYADIC_PHII, 0, (0.0, width), fn, dfn,
                        scale=width / 2 if scale is None else scale, label="phi_0")


def _inner_ring(h: int, r: float, t: float) -> RadialCutoff:
    width = 2.0 ** h * r
    return RadialCutoff(
        CutoffKind.INNER_ETAH, h, (t - 2 * width, t - 0.75 * width),
        lambda s, w=width: base_bump((t - s) / w),
        lambda s, w=width: -base_bump_derivative((t - s) / w) / w,
        scale=width, label=f"eta_{h}")


def _outer_ring(h: int, r: float, t: float) -> RadialCutoff:
    width = 2.0 ** h * r
    return RadialCutoff(
        CutoffKind.OUTER_OMEGAH, h, (t + 0.75 * width, t + 2 * width),
        lambda s, w=width: base_bump((s - t) / w),
        lambda s, w=width: base_bump_derivative((s - t) / w) / w,
        scale=width, label=f"omega_{h}")


def _unit_ring(j: int) -> RadialCutoff:
    return RadialCutoff(
        CutoffKind.UNIT_PSIJ, j, (j - 1 + 1.0 / 3.0, j - 1 + 5.0 / 3.0),
        lambda s, j=j: unit_bump(s - j + 1),
        lambda s, j=j: unit_bump_derivative(s - j + 1),
        scale=1.0, label=f"psi_{j}")


def _singular(t: float, in_start: float, in_width: float, out_start: float, out_width: float) -> RadialCutoff:
    """σ = 1 - M_in - M_out with M_in = 1 - χ((s - in_start)/in_width), M_out = χ((s - out_start)/out_width)"""
    def fn(s):
        return chi((s - in_start) / in_width) - chi((s - out_start) / out_width)

    def dfn(s):
        return dchi((s - in_start) / in_width) / in_width - dchi((s - out_start) / out_width) / out_width

    return RadialCutoff(CutoffKind.SINGULAR_COMPLEMENT, 0, (max(in_start, 0.0), out_start + out_width),
                        fn, dfn, scale=min(in_width, out_width), label="sigma")


def _unit_group(first: int, s_limit: float) -> _Group:
    last = max(first, int(math.ceil(s_limit)) + 1)
    pieces = [_unit_ring(j) for j in range(first, last + 1)]
    return _Group(pieces, (first - 1.0 / 3.0, last + 1.0 / 3.0))


def _dyadic_group(lo: int, hi: int, r: float) -> Optional[_Group]:
    """φ_0 (when lo = 0) and φ_i for max(lo, 1) <= i <= hi"""
    if hi < lo:
        return None
    pieces = []
    if lo == 0:
        pieces.append(_inner_core(2 * r))
    pieces.extend(_dyadic(i, r) for i in range(max(lo, 1), hi + 1))
    plateau_lo = 0.0 if lo == 0 else 2.0 ** lo * r
    return _Group(pieces, (plateau_lo, 1.5 * 2.0 ** hi * r))


def _largest_index(limit: float, r: float) -> int:
    """Largest i with 2^{i+1} r <= limit (may be negative)"""
    if limit <= 0:
        return -10 ** 6
    i = int(math.floor(math.log2(limit / r))) - 1
    while 2.0 ** (i + 1) * r > limit:
        i -= 1
    while 2.0 ** (i + 2) * r <= limit:
        i += 1
    return i


def _case_large_t_small_r(r: float, t: float, s_limit: float):
    h_top = int(math.floor(math.log2(0.2 / r)))
    # inner rings may not reach past the origin
    h_in = h_top
    while h_in >= 3 and t - 2.0 ** (h_in + 1) * r < 0:
        h_in -= 1
    groups = []
    inner_start = t - 2.0 ** (h_in + 1) * r if h_in >= 3 else t - 8 * r
    i_top = _largest_index(inner_start, r)
    i_first = int(math.floor(math.log2(0.1 / r)))
    dyadic = _dyadic_group(0, i_top, r)
    if dyadic:
        groups.append(dyadic)
    if h_in >= 3:
        groups.append(_Group([_inner_ring(h, r, t) for h in range(3, h_in + 1)],
                             (t - 1.5 * 2.0 ** h_in * r, t - 8 * r)))
    groups.append(_Group([_singular(t, t - 8 * r, 2 * r, t + 6 * r, 2 * r)], (t - 6 * r, t + 6 * r)))
    if h_top >= 3:
        groups.append(_Group([_outer_ring(h, r, t) for h in range(3, h_top + 1)],
                             (t + 8 * r, t + 1.5 * 2.0 ** h_top * r)))
    first_unit = int(math.floor(t + 0.2)) + 2
    groups.append(_unit_group(first_unit, s_limit))
    indices = {"I1": i_first, "I2": i_top, "H1": h_in, "H2": h_top, "J": first_unit}
    return groups, indices


def _case_large_t_large_r(r: float, t: float, s_limit: float):
    def inner(s):
        return 1.0 - chi((s - t + 0.2) / 0.1)

    def dinner(s):
        return -dchi((s - t + 0.2) / 0.1) / 0.1

    phi_0 = RadialCutoff(
        CutoffKind.DYADIC_PHII, 0, (0.0, min(3.0, t - 0.1)),
        lambda s: inner(s) * (1.0 - chi(s - 2.0)),
        lambda s: dinner(s) * (1.0 - chi(s - 2.0)) - inner(s) * dchi(s - 2.0),
        scale=1.0, label="phi_0")
    pieces = [phi_0]
    if t - 0.1 > 2.0:
        pieces.append(RadialCutoff(
            CutoffKind.DYADIC_PHII, -1, (2.0, t - 0.1),
            lambda s: inner(s) * chi(s - 2.0),
            lambda s: dinner(s) * chi(s - 2.0) + inner(s) * dchi(s - 2.0),
            scale=1.0, label="phi_t"))
    groups = [_Group(pieces, (0.0, t - 0.2))]
    groups.append(_Group([_singular(t, t - 0.2, 0.1, t + 0.1, 0.1)], (t - 0.1, t + 0.1)))
    first_unit = int(math.floor(t + 0.2)) + 2
    groups.append(_unit_group(first_unit, s_limit))
    return groups, {"J": first_unit, "phi_t": int(len(pieces) == 2)}


def _case_small_t_small_r(r: float, t: float, s_limit: float):
    groups = []
    i_pre = _largest_index(t - 10 * r, r)
    pre = _dyadic_group(0, i_pre, r)
    if pre:
        groups.append(pre)
    groups.append(_Group([_singular(t, t - 10 * r, r, t + 9 * r, r)], (t - 9 * r, t + 9 * r)))
    i_post_lo = int(math.ceil(math.log2((t + 10 * r) / (0.75 * r))))
    while 0.75 * 2.0 ** (i_post_lo - 1) * r >= t + 10 * r:
        i_post_lo -= 1
    while 0.75 * 2.0 ** i_post_lo * r < t + 10 * r:
        i_post_lo += 1
    i_post_hi = _largest_index(4.0 / 3.0, r)
    if i_post_hi >= i_post_lo:
        groups.append(_Group([_dyadic(i, r) for i in range(i_post_lo, i_post_hi + 1)],
                             (2.0 ** i_post_lo * r, 1.5 * 2.0 ** i_post_hi * r)))
    groups.append(_unit_group(2, s_limit))
    return groups, {"I": i_pre, "I1": i_post_lo, "I2": i_post_hi, "J": 2}


def _case_small_t_large_r(r: float, t: float, s_limit: float):
    groups = []
    i_top = _largest_index(4.0 / 3.0, r)
    units = _unit_group(2, s_limit)
    if i_top >= 5:
        pieces = [_inner_core(32 * r)]
        pieces.extend(_dyadic(i, r) for i in range(5, i_top + 1))
        groups.append(_Group(pieces, (0.0, 1.5 * 2.0 ** i_top * r)))
    else:
        unit_sum = units.pieces

        def fn(s):
            return 1.0 - sum(piece(s) for piece in unit_sum)

        def dfn(s):
            return -sum(piece.derivative(s) for piece in unit_sum)

        core = RadialCutoff(CutoffKind.DYADIC_PHII, 0, (0.0, 5.0 / 3.0),
                            lambda s: np.where(s < 5.0 / 3.0, fn(s), 0.0),
                            lambda s: np.where(s < 5.0 / 3.0, dfn(s), 0.0),
                            scale=1.0, label="phi_0")
        groups.append(_Group([core], (0.0, 4.0 / 3.0)))
    groups.append(units)
    return groups, {"I": i_top, "J": 2}


def _bridges(groups: List[_Group], s_limit: float) -> List[RadialCutoff]:
    """Split 1 - Σ groups at plateau midpoints into smooth pieces"""
    everything = [piece for group in groups for piece in group.pieces]

    def remainder(s):
        return 1.0 - sum(piece(s) for piece in everything)

    def dremainder(s):
        return -sum(piece.derivative(s) for piece in everything)

    cuts = [0.0] + [0.5 * (g.plateau[0] + g.plateau[1]) for g in groups] + [math.inf]
    # bridge k lives between the plateau of group k-1 and that of group k
    edges = [0.0] + [g.plateau[1] for g in groups]
    starts = [g.plateau[0] for g in groups] + [math.inf]
    bridges = []
    for k in range(len(cuts) - 1):
        lo, hi = cuts[k], cuts[k + 1]
        support = (max(edges[k], 0.0), min(starts[k], s_limit + 2.0))
        if support[1] <= support[0] or support[0] >= s_limit:
            continue
        sample = np.linspace(support[0], min(support[1], s_limit + 2.0), BRIDGE_SAMPLES)
        sample = sample[(sample >= lo) & (sample < hi)]
        if sample.size == 0 or np.max(np.abs(remainder(sample))) < BRIDGE_FLOOR:
            continue

        def fn(s, lo=lo, hi=hi):
            return np.where((s >= lo) & (s < hi), remainder(s), 0.0)

        def dfn(s, lo=lo, hi=hi):
            return np.where((s >= lo) & (s < hi), dremainder(s), 0.0)

        bridges.append(RadialCutoff(CutoffKind.ANNULAR_BRIDGE, k, support, fn, dfn,
                                    scale=1.0, label=f"bridge_{k}"))
    return bridges


def partition_case(r: float, t: float) -> str:
    """IA: t >= 1/2, r <= 1/10; IB: t >= 1/2, r > 1/10; IIA: t < 1/2, t > 10 r; IIB otherwise"""
    if t >= 0.5:
        return "IA" if r <= 0.1 else "IB"
    return "IIA" if t > 10 * r else "IIB"


def build_partition(r: float, t: float, s_limit: Optional[float] = None) -> CutoffPartition:
    """
    Partition of unity on [0, s_limit] adapted to the atom scale r and the sphere |x| = t

    Args:
        r: Atom radius in (0, 1]
        t: Propagation time > 0
        s_limit: Largest radius to cover; defaults to t + 4

    Returns:
        CutoffPartition whose pieces sum to one on [0, s_limit]
    """
    if not 0 < r <= 1:
        raise DomainError(f"atom radius must lie in (0, 1], got {r}")
    if not t > 0:
        raise DomainError(f"propagation time must be positive, got {t}")
    s_limit = t + 4.0 if s_limit is None else float(s_limit)
    case = partition_case(r, t)
    builder = {
        "IA": _case_large_t_small_r,
        "IB": _case_large_t_large_r,
        "IIA": _case_small_t_small_r,
        "IIB": _case_small_t_large_r,
    }[case]
    groups, indices = builder(r, t, s_limit)
    pieces = [piece for group in groups for piece in group.pieces] + _bridges(groups, s_limit)
    pieces.sort(key=lambda piece: (piece.support[0], piece.kind.value, piece.index))
    logger.debug(f"Partition {case} for r={r}, t={t}: {len(pieces)} pieces, indices {indices}")
    return CutoffPartition(r, t, case, pieces, indices, s_limit)


def cutoff_family(kind, r: float, t: float, p=None, s_limit: Optional[float] = None) -> CutoffFamily:
    """
    One family of the partition for (r, t)

    Args:
        kind: CutoffKind or its string value
        r: Atom radius in (0, 1]
        t: Propagation time > 0
        p: Space parameters (accepted for symmetry with the other operations)
        s_limit: Largest radius covered by the unit rings

    Returns:
        CutoffFamily; empty when the index range is empty
    """
    kind = kind if isinstance(kind, CutoffKind) else CutoffKind(kind)
    return build_partition(r, t, s_limit).family(kind)
