"""Builders shared across test modules."""

from typing import Iterable, List, Optional

import numpy as np

from app.dataset import Dataset

TABLE1_CSV = """x1,x2,class
5,3,No
4,3,No
5,2,No
2,6,Yes
1,4,Yes
3,2.5,Yes
4,3,Yes
4,4.5,Yes
5,5,Yes
5,6,Yes
"""


class ScriptedDraws:
    """A draw source that replays fixed integer draws, for pinning golden examples."""

    def __init__(self, integers: Iterable[int], randoms: Optional[Iterable[float]] = None):
        self._integers: List[int] = list(integers)
        self._randoms: List[float] = list(randoms or [])

    def integers(self, low: int, high: int) -> int:
        value = self._integers.pop(0)
        assert low <= value < high, f"scripted draw {value} outside [{low}, {high})"
        return value

    def random(self) -> float:
        return self._randoms.pop(0) if self._randoms else 0.0

    @property
    def exhausted(self) -> bool:
        return not self._integers


def make_dataset(minority: np.ndarray, majority: np.ndarray, minority_first: bool = True) -> Dataset:
    minority = np.asarray(minority, dtype=float)
    majority = np.asarray(majority, dtype=float)
    blocks = [(minority, "pos"), (majority, "neg")]
    if not minority_first:
        blocks.reverse()
    features = np.vstack([block for block, _ in blocks])
    labels = [label for block, label in blocks for _ in range(len(block))]
    return Dataset(
        features=features,
        labels=tuple(labels),
        positive_label="pos",
        column_names=tuple(f"f{j}" for j in range(features.shape[1])),
        negative_label="neg",
    )


def random_instance(seed: int, m: int, n: int, dims: int) -> Dataset:
    rng = np.random.default_rng(seed)
    return make_dataset(rng.normal(size=(m, dims)), rng.normal(size=(n, dims)))


def imbalanced_blobs(seed: int, n_minority: int = 178, n_majority: int = 570, dims: int = 5,
                     shift: float = 0.45) -> Dataset:
    """Overlapping Gaussian classes; the minority mean is shifted by ``shift`` in every dimension."""
    rng = np.random.default_rng(seed)
    minority = rng.normal(loc=shift, size=(n_minority, dims))
    majority = rng.normal(loc=0.0, size=(n_majority, dims))
    # interleave so row order carries no class information
    order = rng.permutation(n_minority + n_majority)
    features = np.vstack([minority, majority])[order]
    labels = np.array(["1"] * n_minority + ["0"] * n_majority)[order]
    return Dataset(
        features=features,
        labels=tuple(labels),
        positive_label="1",
        column_names=tuple(f"a{j}" for j in range(dims)),
        negative_label="0",
        label_column="donated",
    )
