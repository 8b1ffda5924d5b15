import numpy as np
import pandas as pd
import pytest

from app.exceptions import MetricsError
from app.metrics import (
    ConfusionMatrix, accuracy, auc_single_point, confusion, degenerate_measures, f1, precision,
    recall, roc, write_roc_csv,
)


def pair_counting_auc(truth, scores, positive="P"):
    positives = [s for t, s in zip(truth, scores) if t == positive]
    negatives = [s for t, s in zip(truth, scores) if t != positive]
    wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p in positives for n in negatives)
    return wins / (len(positives) * len(negatives))


def test_confusion_four_cases():
    cm = confusion(["P", "P", "N", "N"], ["P", "N", "P", "N"], "P")
    assert cm == ConfusionMatrix(tp=1, fp=1, tn=1, fn=1)


def test_confusion_perfect_prediction():
    truth = ["P", "N", "N", "P", "N"]
    cm = confusion(truth, truth, "P")
    assert (cm.fp, cm.fn) == (0, 0)
    assert (cm.tp, cm.tn) == (2, 3)


def test_confusion_all_negative_prediction():
    cm = confusion(["P", "P", "N"], ["N", "N", "N"], "P")
    assert cm == ConfusionMatrix(tp=0, fp=0, tn=1, fn=2)


def test_confusion_errors():
    with pytest.raises(MetricsError, match="truth has 2 entries"):
        confusion(["P", "N"], ["P"], "P")
    with pytest.raises(MetricsError, match="empty"):
        confusion([], [], "P")


def test_measures_worked_example():
    cm = ConfusionMatrix(tp=3, fp=1, tn=5, fn=1)
    assert accuracy(cm) == 0.8
    assert precision(cm) == 0.75
    assert recall(cm) == 0.75
    assert f1(cm) == 0.75
    assert auc_single_point(cm) == pytest.approx((1 + 0.75 - 1 / 6) / 2, abs=1e-12)
    assert auc_single_point(cm) == pytest.approx(0.7917, abs=1e-4)


def test_measures_perfect_matrix():
    cm = ConfusionMatrix(tp=4, fp=0, tn=6, fn=0)
    assert [accuracy(cm), precision(cm), recall(cm), f1(cm), auc_single_point(cm)] == [1.0] * 5
    assert degenerate_measures(cm) == []


def test_degenerate_precision_is_zero_and_flagged():
    cm = ConfusionMatrix(tp=0, fp=0, tn=5, fn=3)
    assert precision(cm) == 0.0
    assert f1(cm) == 0.0
    assert degenerate_measures(cm) == ["precision", "f1"]


def test_auc_single_point_chance_line():
    assert auc_single_point(ConfusionMatrix(tp=2, fp=2, tn=2, fn=2)) == 0.5


def test_measures_match_direct_arithmetic_on_random_matrices():
    rng = np.random.default_rng(100)
    for _ in range(1000):
        tp, fp, tn, fn = (int(v) for v in rng.integers(0, 50, size=4))
        if tp + fp + tn + fn == 0:
            continue
        cm = ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn)
        assert accuracy(cm) == (tp + tn) / (tp + tn + fp + fn)
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        assert precision(cm) == p
        assert recall(cm) == r
        assert f1(cm) == (2 * r * p / (r + p) if r + p else 0.0)
        for value in (accuracy(cm), p, r, f1(cm), auc_single_point(cm)):
            assert 0.0 <= value <= 1.0
        assert f1(cm) <= (p + r) / 2 + 1e-15


def test_accuracy_is_symmetric_in_positive_class_but_precision_is_not():
    truth = ["a", "a", "b", "b", "b", "a"]
    predicted = ["a", "a", "b", "a", "a", "a"]
    as_a, as_b = confusion(truth, predicted, "a"), confusion(truth, predicted, "b")
    assert accuracy(as_a) == accuracy(as_b)
    assert precision(as_a) != precision(as_b)
    assert recall(as_a) != recall(as_b)


def test_roc_worked_example():
    curve = roc(["P", "N", "P", "N"], [0.9, 0.8, 0.7, 0.1], "P")
    assert curve.auc == 0.75
    assert curve.points == ((0.0, 0.0), (0.0, 0.5), (0.5, 0.5), (0.5, 1.0), (1.0, 1.0))


def test_roc_perfect_separation():
    assert roc(["P", "P", "N", "N"], [0.9, 0.8, 0.3, 0.1], "P").auc == 1.0


def test_roc_groups_tied_scores():
    curve = roc(["P", "N", "P", "N"], [0.5, 0.5, 0.5, 0.5], "P")
    assert curve.points == ((0.0, 0.0), (1.0, 1.0))
    assert curve.auc == 0.5


def test_roc_anchors_and_monotone_fpr():
    rng = np.random.default_rng(101)
    truth = ["P" if flag else "N" for flag in rng.random(60) < 0.3]
    curve = roc(truth, rng.random(60), "P")
    assert curve.points[0] == (0.0, 0.0)
    assert curve.points[-1] == (1.0, 1.0)
    assert all(a <= b for a, b in zip(curve.fpr, curve.fpr[1:]))
    trapezoid = sum((x1 - x0) * (y0 + y1) / 2 for (x0, y0), (x1, y1) in zip(curve.points, curve.points[1:]))
    assert curve.auc == pytest.approx(trapezoid, abs=1e-12)


def test_roc_matches_pair_counting_oracle():
    rng = np.random.default_rng(102)
    for _ in range(200):
        n = int(rng.integers(2, 201))
        truth = ["P" if flag else "N" for flag in rng.random(n) < rng.uniform(0.1, 0.9)]
        if len(set(truth)) < 2:
            truth[0], truth[1] = "P", "N"
        # coarse scores so ties occur
        scores = np.round(rng.random(n), 1)
        assert roc(truth, scores, "P").auc == pytest.approx(pair_counting_auc(truth, scores), abs=1e-12)


def test_roc_uninformative_scores_near_half():
    rng = np.random.default_rng(103)
    truth = ["P" if flag else "N" for flag in rng.random(1000) < 0.5]
    assert abs(roc(truth, rng.random(1000), "P").auc - 0.5) <= 0.05


def test_roc_errors():
    with pytest.raises(MetricsError, match="single class"):
        roc(["P", "P"], [0.1, 0.2], "P")
    with pytest.raises(MetricsError, match="finite"):
        roc(["P", "N"], [0.1, float("nan")], "P")
    with pytest.raises(MetricsError):
        roc(["P", "N"], [0.1], "P")


def test_write_roc_csv(tmp_path):
    curve = roc(["P", "N", "P", "N"], [0.9, 0.8, 0.7, 0.1], "P")
    path = tmp_path / "roc.csv"
    write_roc_csv(curve, path)
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["fpr", "tpr"]
    assert list(zip(frame.fpr, frame.tpr)) == list(curve.points)
