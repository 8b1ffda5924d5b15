"""SMOTE: synthetic minority samples by interpolation toward minority neighbors.

Each synthetic sample picks a random minority base point, one of its k
nearest minority neighbors, and a scalar delta in [0, 1), and lies on the
segment between base and neighbor.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .dataset import Dataset
from .exceptions import ResampleError
from .models import SmoteConfig
from .neighbors import minority_neighbors
from .sampling import DrawSource, draw_delta, draw_index, make_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SyntheticSample:
    features: np.ndarray
    base_index: int
    neighbor_index: int
    delta: float


def interpolate(ds: Dataset, base_index: int, neighbor_index: int, delta: float) -> SyntheticSample:
    base = ds.features[base_index]
    features = base + delta * (ds.features[neighbor_index] - base)
    features.setflags(write=False)
    return SyntheticSample(
        features=features, base_index=base_index, neighbor_index=neighbor_index, delta=delta
    )


def clip_k(k: int, available: int, method: str) -> int:
    if k > available:
        logger.warning("%s: k=%d clipped to %d (only %d other minority points)", method, k, available, available)
        return available
    return k


def balance_count(ds: Dataset) -> int:
    """Synthetic samples needed for equal class counts, n - m."""
    return ds.majority_count - ds.minority_count


def smote(ds: Dataset, cfg: SmoteConfig, rng: Optional[DrawSource] = None) -> List[SyntheticSample]:
    """Generate ``cfg.n_synthetic`` samples in draw order.

    Per sample the draws are: base point, neighbor slot, delta.
    """
    if cfg.n_synthetic < 0:
        raise ResampleError(f"number of synthetic samples must be non-negative, got {cfg.n_synthetic}")
    m = ds.minority_count
    if m < 2:
        raise ResampleError(f"SMOTE needs at least 2 minority rows to interpolate, found {m}")

    k = clip_k(cfg.k, m - 1, "SMOTE")
    minority, neighbors = minority_neighbors(ds, k)
    source = rng if rng is not None else make_rng(cfg.seed)

    samples = []
    for _ in range(cfg.n_synthetic):
        base = draw_index(source, m)
        neighbor = neighbors[base][draw_index(source, k)]
        delta = draw_delta(source, cfg.delta_override)
        samples.append(interpolate(ds, minority[base], neighbor, delta))

    logger.info("SMOTE generated %d samples from %d minority rows (k=%d)", len(samples), m, k)
    return samples


def with_synthetic(ds: Dataset, samples: List[SyntheticSample]) -> Dataset:
    """``ds`` followed by the synthetic rows, labeled positive."""
    rows = np.array([sample.features for sample in samples], dtype=float)
    return ds.append_rows(rows.reshape(-1, ds.n_features), ds.positive_label)
