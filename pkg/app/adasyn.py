"""ADASYN: SMOTE-style interpolation with per-point counts driven by local majority density.

Minority points with more majority neighbors are harder to learn and receive
more synthetic samples. ADASYN performs no outlier handling; isolated minority
points surrounded by majority rows get the largest share, so outliers should
be dealt with before resampling.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .dataset import Dataset, partition, round_half_up
from .exceptions import ResampleError
from .neighbors import majority_count, minority_neighbors
from .sampling import DrawSource, draw_delta, draw_index, make_rng
from .smote import SyntheticSample, clip_k, interpolate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlanEntry:
    row_index: int
    majority_neighbors: int
    ratio: float
    weight: float
    count: int


@dataclass(frozen=True)
class AdasynPlan:
    total: int
    beta: float
    k: int
    entries: Tuple[PlanEntry, ...]
    uniform_fallback: bool = False

    @property
    def ratios(self) -> List[float]:
        return [entry.ratio for entry in self.entries]

    @property
    def weights(self) -> List[float]:
        return [entry.weight for entry in self.entries]

    @property
    def counts(self) -> List[int]:
        return [entry.count for entry in self.entries]


def largest_remainder(weights: Sequence[int], total: int) -> List[int]:
    """Split ``total`` proportionally to integer ``weights``, summing exactly to ``total``.

    Leftover units go to the largest fractional remainders, lower position first on ties.
    """
    weight_sum = sum(weights)
    if weight_sum <= 0:
        raise ValueError("weights must have a positive sum")
    quotas = [divmod(total * weight, weight_sum) for weight in weights]
    counts = [whole for whole, _ in quotas]
    order = sorted(range(len(weights)), key=lambda i: (-quotas[i][1], i))
    for i in order[: total - sum(counts)]:
        counts[i] += 1
    return counts


def _check_request(ds: Dataset, beta: float) -> Tuple[int, int]:
    if not 0.0 < beta <= 1.0:
        raise ResampleError(f"beta must lie in (0, 1], got {beta}")
    m, n = ds.minority_count, ds.majority_count
    if m < 2:
        raise ResampleError(f"ADASYN needs at least 2 minority rows to interpolate, found {m}")
    if n <= m:
        raise ResampleError(f"nothing to balance: majority={n} is not larger than minority={m}")
    return m, n


def adasyn_plan(ds: Dataset, beta: float, k: int) -> AdasynPlan:
    m, n = _check_request(ds, beta)
    total = round_half_up(beta * (n - m))
    density_k = k
    if k > ds.n_rows - 1:
        density_k = ds.n_rows - 1
        logger.warning("ADASYN: density k=%d clipped to %d", k, density_k)

    minority, _ = partition(ds)
    f_k = [majority_count(ds, row, density_k) for row in minority]

    uniform = sum(f_k) == 0
    if uniform:
        logger.warning("ADASYN: no minority point has a majority neighbor; using uniform weights")
        weights = [1] * m
    else:
        weights = f_k

    weight_sum = sum(weights)
    counts = largest_remainder(weights, total)
    entries = tuple(
        PlanEntry(
            row_index=row,
            majority_neighbors=f,
            ratio=f / density_k,
            weight=w / weight_sum,
            count=g,
        )
        for row, f, w, g in zip(minority, f_k, weights, counts)
    )
    return AdasynPlan(total=total, beta=beta, k=density_k, entries=entries, uniform_fallback=uniform)


def adasyn(
    ds: Dataset,
    beta: float,
    k: int,
    seed: int,
    delta_override: Optional[float] = None,
    rng: Optional[DrawSource] = None,
) -> List[SyntheticSample]:
    """Generate the planned samples, minority row order first, then j = 1..g_i.

    Per sample the draws are: neighbor slot, delta.
    """
    plan = adasyn_plan(ds, beta, k)
    k_gen = clip_k(k, ds.minority_count - 1, "ADASYN")
    _, neighbors = minority_neighbors(ds, k_gen)
    source = rng if rng is not None else make_rng(seed)

    samples = []
    for position, entry in enumerate(plan.entries):
        for _ in range(entry.count):
            neighbor = neighbors[position][draw_index(source, k_gen)]
            delta = draw_delta(source, delta_override)
            samples.append(interpolate(ds, entry.row_index, neighbor, delta))

    logger.info("ADASYN generated %d samples (G=%d, beta=%g, k=%d)", len(samples), plan.total, beta, k)
    return samples
