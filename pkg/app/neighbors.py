"""Exact brute-force k-nearest-neighbor search.

Distances are Euclidean. Ties on distance are broken by ascending index in the
searched point set, which makes every query deterministic.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .dataset import Dataset, partition
from .exceptions import NeighborError


@dataclass(frozen=True)
class NeighborList:
    query_index: Optional[int]
    indices: Tuple[int, ...]
    distances: Tuple[float, ...]

    @property
    def entries(self) -> Tuple[Tuple[int, float], ...]:
        return tuple(zip(self.indices, self.distances))

    def __len__(self) -> int:
        return len(self.indices)


def euclidean(points: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Distance from ``query`` to every row of ``points``."""
    diff = np.asarray(points, dtype=float) - np.asarray(query, dtype=float)
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def knn(points: np.ndarray, query: np.ndarray, k: int, exclude: Optional[int] = None) -> NeighborList:
    """The ``k`` points of ``points`` closest to ``query``.

    ``exclude`` names the row of ``points`` that is the query itself; it is
    never returned.
    """
    points = np.asarray(points, dtype=float)
    if k < 1:
        raise NeighborError(f"k must be at least 1, got {k}")

    candidates = np.arange(points.shape[0])
    if exclude is not None:
        candidates = candidates[candidates != exclude]
    if k > len(candidates):
        raise NeighborError(f"k={k} exceeds the {len(candidates)} points available to search")

    distances = euclidean(points[candidates], query)
    # stable sort keeps ascending index order among equal distances
    order = np.argsort(distances, kind="stable")[:k]
    return NeighborList(
        query_index=exclude,
        indices=tuple(int(candidates[i]) for i in order),
        distances=tuple(float(distances[i]) for i in order),
    )


def minority_neighbors(ds: Dataset, k: int) -> Tuple[list, list]:
    """k-NN of every minority row among minority rows only.

    Returns the minority row indices and, per minority row, its neighbors as
    dataset row indices.
    """
    minority, _ = partition(ds)
    points = ds.features[minority]
    neighbors = []
    for position in range(len(minority)):
        found = knn(points, points[position], k, exclude=position)
        neighbors.append([minority[i] for i in found.indices])
    return minority, neighbors


def majority_count(ds: Dataset, minority_index: int, k: int) -> int:
    """Number of majority rows among the k-NN of a minority row over all rows.

    The searched set lists majority rows before minority rows, so a distance
    tie at the k-th neighbor resolves toward the majority class.
    """
    minority, majority = partition(ds)
    search_rows = majority + [row for row in minority if row != minority_index]
    if k > len(search_rows):
        raise NeighborError(f"k={k} exceeds the {len(search_rows)} rows available to search")

    found = knn(ds.features[search_rows], ds.features[minority_index], k)
    return sum(1 for i in found.indices if i < len(majority))
