"""Baseline logistic regression trained by full-batch gradient descent.

Weights start at zero, so training is deterministic without any seed. Saved
models are flat ``key=value`` text and carry the standardizer statistics and
category tables fitted alongside them, so a saved model can score raw CSV rows
directly.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Mapping, Optional, Tuple, Union

import numpy as np

from .dataset import Dataset, Standardizer
from .exceptions import ModelError
from .models import TrainingConfig

logger = logging.getLogger(__name__)

MODEL_FORMAT = "linear-model v1"


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    column_names: Tuple[str, ...]
    positive_label: str
    negative_label: str
    config: TrainingConfig
    loss_history: Tuple[float, ...] = ()
    standardizer: Optional[Standardizer] = None
    categories: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)

    @property
    def final_loss(self) -> float:
        return self.loss_history[-1] if self.loss_history else float("nan")


def sigmoid(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    # exp(-|z|) <= 1, so neither branch overflows
    ez = np.exp(-np.abs(z))
    return np.where(z >= 0, 1.0 / (1.0 + ez), ez / (1.0 + ez))


def log_loss(weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray) -> float:
    """Mean negative log-likelihood, computed without overflow."""
    z = x @ weights + bias
    return float(np.mean(np.logaddexp(0.0, z) - y * z))


def log_loss_gradient(weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, float]:
    error = sigmoid(x @ weights + bias) - y
    return x.T @ error / len(y), float(np.mean(error))


def _targets(ds: Dataset) -> np.ndarray:
    return ds.positive_mask.astype(float)


def train(ds: Dataset, config: Optional[TrainingConfig] = None) -> LinearModel:
    config = config or TrainingConfig()
    if ds.minority_count == 0 or ds.majority_count == 0:
        raise ModelError("training data must contain both classes")

    x, y = ds.features, _targets(ds)
    weights = np.zeros(ds.n_features)
    bias = 0.0
    history: List[float] = []
    for epoch in range(config.epochs):
        grad_w, grad_b = log_loss_gradient(weights, bias, x, y)
        weights = weights - config.learning_rate * grad_w
        bias = bias - config.learning_rate * grad_b
        history.append(log_loss(weights, bias, x, y))
        if epoch % 100 == 0:
            logger.debug("epoch %d: loss %.6f", epoch, history[-1])

    logger.info("trained logistic model on %d rows: final loss %.6f", ds.n_rows, history[-1])
    weights.setflags(write=False)
    return LinearModel(
        weights=weights,
        bias=bias,
        column_names=ds.column_names,
        positive_label=ds.positive_label,
        negative_label=ds.negative_label,
        config=config,
        loss_history=tuple(history),
        categories=dict(ds.categories),
    )


def predict_scores(model: LinearModel, ds: Dataset) -> List[float]:
    if ds.n_features != len(model.weights):
        raise ModelError(
            f"model expects {len(model.weights)} features, dataset has {ds.n_features}"
        )
    if ds.column_names != model.column_names:
        raise ModelError(
            f"model columns {list(model.column_names)} do not match dataset columns {list(ds.column_names)}"
        )
    return [float(score) for score in sigmoid(ds.features @ model.weights + model.bias)]


def predict_labels(model: LinearModel, ds: Dataset, threshold: float = 0.5) -> List[str]:
    return [
        model.positive_label if score >= threshold else model.negative_label
        for score in predict_scores(model, ds)
    ]


# ============================================================================
# PERSISTENCE
# ============================================================================

def save_model(model: LinearModel, path: Union[str, Path]) -> None:
    lines = [
        f"# {MODEL_FORMAT}",
        f"positive_label={model.positive_label}",
        f"negative_label={model.negative_label}",
        f"learning_rate={model.config.learning_rate!r}",
        f"epochs={model.config.epochs}",
        f"seed={model.config.seed}",
        f"bias={float(model.bias)!r}",
    ]
    for j, name in enumerate(model.column_names):
        lines.append(f"weight.{name}={float(model.weights[j])!r}")
    if model.standardizer is not None:
        s = model.standardizer
        for j, name in enumerate(model.column_names):
            lines.append(f"mean.{name}={float(s.mean[j])!r}")
            lines.append(f"std.{name}={float(s.std[j])!r}")
            lines.append(f"constant.{name}={int(s.constant[j])}")
    for name in model.column_names:
        if name in model.categories:
            lines.append(f"category.{name}={json.dumps(list(model.categories[name]))}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: Union[str, Path]) -> LinearModel:
    path = Path(path)
    if not path.is_file():
        raise ModelError(f"model file not found: {path}")

    text = path.read_text(encoding="utf-8").splitlines()
    if not text or text[0].strip() != f"# {MODEL_FORMAT}":
        raise ModelError(f"{path} is not a saved {MODEL_FORMAT} file")

    fields = {}
    columns: List[str] = []
    for number, line in enumerate(text[1:], start=2):
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ModelError(f"{path}:{number}: expected key=value")
        fields[key] = value
        if key.startswith("weight."):
            columns.append(key[len("weight."):])

    try:
        weights = np.array([float(fields[f"weight.{name}"]) for name in columns])
        config = TrainingConfig(
            learning_rate=float(fields["learning_rate"]),
            epochs=int(fields["epochs"]),
            seed=int(fields["seed"]),
        )
        categories = {
            key[len("category."):]: tuple(json.loads(value))
            for key, value in fields.items() if key.startswith("category.")
        }
        standardizer = None
        if all(f"mean.{name}" in fields for name in columns) and columns:
            standardizer = Standardizer(
                mean=np.array([float(fields[f"mean.{name}"]) for name in columns]),
                std=np.array([float(fields[f"std.{name}"]) for name in columns]),
                constant=np.array([fields[f"constant.{name}"] == "1" for name in columns]),
                column_names=tuple(columns),
            )
        return LinearModel(
            weights=weights,
            bias=float(fields["bias"]),
            column_names=tuple(columns),
            positive_label=fields["positive_label"],
            negative_label=fields["negative_label"],
            config=config,
            standardizer=standardizer,
            categories=categories,
        )
    except (KeyError, ValueError) as exc:
        raise ModelError(f"{path} is missing or has a malformed field: {exc}") from exc
