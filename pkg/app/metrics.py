"""Confusion-matrix measures and threshold-sweep ROC curves.

Measures with a zero denominator evaluate to 0.0 instead of raising;
``degenerate_measures`` reports which ones did.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .exceptions import MetricsError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def positives(self) -> int:
        return self.tp + self.fn

    @property
    def negatives(self) -> int:
        return self.tn + self.fp

    @property
    def tpr(self) -> float:
        return _ratio(self.tp, self.positives)

    @property
    def fpr(self) -> float:
        return _ratio(self.fp, self.negatives)


@dataclass(frozen=True)
class RocCurve:
    points: Tuple[Tuple[float, float], ...]
    auc: float

    @property
    def fpr(self) -> List[float]:
        return [point[0] for point in self.points]

    @property
    def tpr(self) -> List[float]:
        return [point[1] for point in self.points]


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def _check_pair(truth: Sequence, other: Sequence, name: str) -> None:
    if len(truth) != len(other):
        raise MetricsError(f"truth has {len(truth)} entries but {name} has {len(other)}")
    if len(truth) == 0:
        raise MetricsError("cannot evaluate an empty label list")


def confusion(truth: Sequence[str], predicted: Sequence[str], positive_label: str) -> ConfusionMatrix:
    _check_pair(truth, predicted, "predicted")
    actual = np.array([label == positive_label for label in truth], dtype=bool)
    guessed = np.array([label == positive_label for label in predicted], dtype=bool)
    return ConfusionMatrix(
        tp=int(np.sum(actual & guessed)),
        fp=int(np.sum(~actual & guessed)),
        tn=int(np.sum(~actual & ~guessed)),
        fn=int(np.sum(actual & ~guessed)),
    )


def accuracy(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tp + cm.tn, cm.total)


def precision(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tp, cm.tp + cm.fp)


def recall(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tp, cm.tp + cm.fn)


def f1(cm: ConfusionMatrix) -> float:
    p, r = precision(cm), recall(cm)
    return _ratio(2 * r * p, r + p)


def auc_single_point(cm: ConfusionMatrix) -> float:
    """Area under the ROC polygon through (0,0), (FPR, TPR), (1,1)."""
    return (1.0 + cm.tpr - cm.fpr) / 2.0


def degenerate_measures(cm: ConfusionMatrix) -> List[str]:
    flagged = []
    if cm.total == 0:
        flagged.append("accuracy")
    if cm.tp + cm.fp == 0:
        flagged.append("precision")
    if cm.tp + cm.fn == 0:
        flagged.append("recall")
    if precision(cm) + recall(cm) == 0:
        flagged.append("f1")
    if cm.positives == 0 or cm.negatives == 0:
        flagged.append("auc_single_point")
    return flagged


def roc(truth: Sequence[str], scores: Sequence[float], positive_label: str) -> RocCurve:
    """One ROC point per distinct score, highest threshold first.

    Equal scores form a single threshold step, so ties contribute the
    diagonal segment (half credit) to the area.
    """
    _check_pair(truth, scores, "scores")
    values = np.asarray(scores, dtype=float)
    if not np.isfinite(values).all():
        raise MetricsError("scores must all be finite")
    actual = np.array([label == positive_label for label in truth], dtype=bool)
    n_pos = int(actual.sum())
    n_neg = len(actual) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise MetricsError("ROC AUC is undefined when the truth holds a single class")

    order = np.argsort(-values, kind="stable")
    sorted_scores = values[order]
    tp = np.cumsum(actual[order])
    fp = np.cumsum(~actual[order])
    # last position of every run of equal scores
    step_ends = np.flatnonzero(np.diff(sorted_scores)).tolist() + [len(sorted_scores) - 1]

    fpr = np.concatenate([[0.0], fp[step_ends] / n_neg])
    tpr = np.concatenate([[0.0], tp[step_ends] / n_pos])
    area = float(np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2.0))
    return RocCurve(
        points=tuple((float(x), float(y)) for x, y in zip(fpr, tpr)),
        auc=area,
    )


def write_roc_csv(curve: RocCurve, path: Union[str, Path]) -> None:
    frame = pd.DataFrame({
        "fpr": [repr(fpr) for fpr in curve.fpr],
        "tpr": [repr(tpr) for tpr in curve.tpr],
    })
    frame.to_csv(path, index=False, lineterminator="\n")
