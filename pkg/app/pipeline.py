"""The resample/evaluate pipeline behind the CLI and the HTTP service.

Evaluation always runs in this order: stratified split, standardizer fitted on
the training partition and applied to both, resampling of the training
partition only, model training, scoring of the untouched test partition.
"""

import dataclasses
import logging
import time
from dataclasses import dataclass
from typing import List, Optional

from .adasyn import adasyn
from .dataset import Dataset, SplitPair, apply_standardizer, fit_standardizer, stratified_split
from .exceptions import ResampleError
from .metrics import (
    RocCurve, accuracy, auc_single_point, confusion, degenerate_measures, f1, precision, recall, roc,
)
from .model import LinearModel, predict_labels, predict_scores, train
from .models import AdasynConfig, ClassCounts, EvaluateRequest, Measures, RunReport, SmoteConfig
from .smote import SyntheticSample, balance_count, smote, with_synthetic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResampleResult:
    dataset: Dataset
    samples: List[SyntheticSample]


@dataclass(frozen=True)
class Evaluation:
    report: RunReport
    curve: RocCurve
    model: LinearModel
    split: SplitPair


def resample(
    ds: Dataset,
    method: str,
    *,
    k: int,
    seed: int,
    n_synthetic: Optional[int] = None,
    beta: float = 1.0,
    delta_override: Optional[float] = None,
) -> ResampleResult:
    """Append synthetic minority rows to ``ds``; ``method="none"`` returns it unchanged.

    SMOTE defaults to ``balance_count(ds)`` samples when ``n_synthetic`` is None.
    """
    if method == "none":
        return ResampleResult(dataset=ds, samples=[])
    if method == "smote":
        n = max(balance_count(ds), 0) if n_synthetic is None else n_synthetic
        cfg = SmoteConfig(n_synthetic=n, k=k, seed=seed, delta_override=delta_override)
        samples = smote(ds, cfg)
    elif method == "adasyn":
        cfg = AdasynConfig(beta=beta, k=k, seed=seed, delta_override=delta_override)
        samples = adasyn(ds, cfg.beta, cfg.k, cfg.seed, cfg.delta_override)
    else:
        raise ResampleError(f"unknown resampling method {method!r}; expected none, smote or adasyn")
    return ResampleResult(dataset=with_synthetic(ds, samples), samples=samples)


def _counts(ds: Dataset) -> ClassCounts:
    return ClassCounts(minority=ds.minority_count, majority=ds.majority_count)


def evaluate(ds: Dataset, request: EvaluateRequest) -> Evaluation:
    timings = {}
    started = clock = time.perf_counter()

    def lap(name: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        timings[name] = round((now - clock) * 1000, 3)
        clock = now

    split = stratified_split(ds, request.train_fraction, request.seed)
    standardizer = fit_standardizer(split.train)
    train_set = apply_standardizer(standardizer, split.train)
    test_set = apply_standardizer(standardizer, split.test)
    lap("split_ms")

    resampled = resample(
        train_set,
        request.method,
        k=request.k,
        seed=request.seed,
        n_synthetic=request.n_synthetic,
        beta=request.beta,
        delta_override=request.delta_override,
    )
    lap("resample_ms")

    model = train(resampled.dataset, request.training)
    model = dataclasses.replace(model, standardizer=standardizer)
    lap("train_ms")

    scores = predict_scores(model, test_set)
    predicted = predict_labels(model, test_set, request.threshold)
    cm = confusion(test_set.labels, predicted, ds.positive_label)
    curve = roc(test_set.labels, scores, ds.positive_label)
    lap("evaluate_ms")
    timings["total_ms"] = round((time.perf_counter() - started) * 1000, 3)

    report = RunReport(
        method=request.method,
        seed=request.seed,
        train_fraction=request.train_fraction,
        k=request.k,
        before=_counts(train_set),
        after=_counts(resampled.dataset),
        generated=len(resampled.samples),
        test=_counts(test_set),
        measures=Measures(
            accuracy=accuracy(cm),
            precision=precision(cm),
            recall=recall(cm),
            f1=f1(cm),
            auc_roc=curve.auc,
            auc_single_point=auc_single_point(cm),
        ),
        degenerate=degenerate_measures(cm),
        final_loss=model.final_loss,
        timings_ms=timings,
    )
    logger.info(
        "%s: generated=%d f1=%.4f auc=%.4f", request.method, report.generated,
        report.measures.f1, report.measures.auc_roc,
    )
    return Evaluation(report=report, curve=curve, model=model, split=split)
