"""Seeded random draws for the resamplers.

All randomness goes through a ``DrawSource``: numpy's ``Generator`` satisfies it,
and tests can substitute a scripted source to pin individual draws.
"""

from typing import Optional, Protocol

import numpy as np


class DrawSource(Protocol):
    def integers(self, low: int, high: int) -> int:
        """Uniform integer in [low, high)."""
        ...

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        ...


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; identical streams for identical seeds on every platform."""
    return np.random.default_rng(seed)


def draw_index(source: DrawSource, upper: int) -> int:
    return int(source.integers(0, upper))


def draw_delta(source: DrawSource, override: Optional[float]) -> float:
    # the draw is consumed even when overridden so later draws do not shift
    delta = float(source.random())
    return delta if override is None else float(override)
