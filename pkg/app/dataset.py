"""Two-class tabular data: loading, encoding, splitting and standardization.

A ``Dataset`` is immutable once built; every transformation returns a new one.
Categorical columns are integer-encoded in lexicographic category order and
features are standardized with population statistics fitted on training rows.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .exceptions import DataError
from .sampling import make_rng

logger = logging.getLogger(__name__)

CsvSource = Union[str, Path, IO]

# relative threshold below which a fitted standard deviation counts as zero
CONSTANT_COLUMN_TOLERANCE = 1e-12


def _frozen_matrix(values, n_columns: int) -> np.ndarray:
    matrix = np.array(values, dtype=float)
    if matrix.size == 0:
        matrix = matrix.reshape(0, n_columns)
    matrix.setflags(write=False)
    return matrix


def round_half_up(value: float) -> int:
    return int(np.floor(value + 0.5))


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    labels: Tuple[str, ...]
    positive_label: str
    column_names: Tuple[str, ...]
    negative_label: Optional[str] = None
    label_column: str = "class"
    label_position: Optional[int] = None
    # category strings per encoded column; a category's code is its position
    categories: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        column_names = tuple(str(name) for name in self.column_names)
        labels = tuple(str(label) for label in self.labels)
        features = _frozen_matrix(self.features, len(column_names))

        if features.ndim != 2 or features.shape[1] != len(column_names):
            raise DataError(
                f"feature matrix has shape {features.shape} but {len(column_names)} column names were given"
            )
        if features.shape[0] != len(labels):
            raise DataError(f"{features.shape[0]} feature rows but {len(labels)} labels")
        if not np.isfinite(features).all():
            row, column = np.argwhere(~np.isfinite(features))[0]
            raise DataError(f"non-finite value at row {row}, column {column_names[column]!r}")

        negative_label = self.negative_label
        if negative_label is None:
            others = sorted({label for label in labels if label != self.positive_label})
            negative_label = others[0] if others else None

        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "column_names", column_names)
        object.__setattr__(self, "negative_label", negative_label)

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def positive_mask(self) -> np.ndarray:
        return np.array([label == self.positive_label for label in self.labels], dtype=bool)

    @property
    def minority_count(self) -> int:
        return int(self.positive_mask.sum())

    @property
    def majority_count(self) -> int:
        return self.n_rows - self.minority_count

    def take(self, rows: Sequence[int]) -> "Dataset":
        rows = list(rows)
        return self._replace(
            features=self.features[rows] if rows else np.empty((0, self.n_features)),
            labels=tuple(self.labels[i] for i in rows),
        )

    def with_features(self, features: np.ndarray) -> "Dataset":
        return self._replace(features=features, labels=self.labels)

    def append_rows(self, features: np.ndarray, label: str) -> "Dataset":
        """Original rows first, then ``features`` rows all tagged ``label``."""
        extra = np.asarray(features, dtype=float).reshape(-1, self.n_features)
        return self._replace(
            features=np.vstack([self.features, extra]),
            labels=self.labels + (label,) * extra.shape[0],
        )

    def _replace(self, features, labels) -> "Dataset":
        return Dataset(
            features=features,
            labels=labels,
            positive_label=self.positive_label,
            column_names=self.column_names,
            negative_label=self.negative_label,
            label_column=self.label_column,
            label_position=self.label_position,
            categories=self.categories,
        )


@dataclass(frozen=True)
class SplitPair:
    train: Dataset
    test: Dataset
    train_fraction: float
    train_rows: Tuple[int, ...] = field(default=())
    test_rows: Tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    std: np.ndarray
    constant: np.ndarray
    column_names: Tuple[str, ...]

    @property
    def scale(self) -> np.ndarray:
        return np.where(self.constant, 1.0, self.std)


# ============================================================================
# CSV INGESTION
# ============================================================================

def _describe(source: CsvSource) -> str:
    return str(source) if isinstance(source, (str, Path)) else "uploaded CSV"


def _read_frame(source: CsvSource) -> pd.DataFrame:
    """All cells as stripped strings; any empty cell is an error."""
    if isinstance(source, (str, Path)) and not Path(source).is_file():
        raise DataError(f"input file not found: {source}")

    try:
        frame = pd.read_csv(source, dtype=str, skipinitialspace=True)
    except pd.errors.EmptyDataError as exc:
        raise DataError(f"{_describe(source)} is empty; a header row is required") from exc
    except (pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise DataError(f"{_describe(source)} is not a readable UTF-8 CSV: {exc}") from exc

    frame.columns = [str(name).strip() for name in frame.columns]
    missing = frame.isna().to_numpy()
    if missing.any():
        row, column = np.argwhere(missing)[0]
        # +2: one for the header line, one for 1-based numbering
        raise DataError(f"missing value at line {row + 2}, column {frame.columns[column]!r}")
    return frame.apply(lambda column: column.str.strip())


def _encode_columns(
    frame: pd.DataFrame,
    names: Sequence[str],
    categories: Optional[Mapping[str, Tuple[str, ...]]] = None,
) -> Tuple[np.ndarray, Dict[str, Tuple[str, ...]]]:
    """Feature matrix for ``names``.

    With ``categories`` given, encoded columns reuse those tables and every
    other column must be numeric; otherwise tables are built from ``frame``.
    """
    fitted = categories is None
    tables: Dict[str, Tuple[str, ...]] = {} if fitted else dict(categories)
    columns = []
    for name in names:
        raw = frame[name]
        if name in tables:
            codes = {category: code for code, category in enumerate(tables[name])}
            unseen = sorted(set(raw) - set(codes))
            if unseen:
                raise DataError(f"column {name!r} has categories unknown to the model: {unseen}")
            columns.append(raw.map(codes).to_numpy(dtype=float))
            continue

        numeric = pd.to_numeric(raw, errors="coerce")
        if numeric.isna().any():
            if not fitted:
                row = int(np.argwhere(numeric.isna().to_numpy())[0][0])
                raise DataError(f"non-numeric value {raw.iloc[row]!r} at line {row + 2}, column {name!r}")
            tables[name] = tuple(sorted(raw.unique()))
            logger.info("encoded categorical column %r (%d categories)", name, len(tables[name]))
            codes = {category: code for code, category in enumerate(tables[name])}
            columns.append(raw.map(codes).to_numpy(dtype=float))
            continue

        values = numeric.to_numpy(dtype=float)
        if not np.isfinite(values).all():
            row = int(np.argwhere(~np.isfinite(values))[0][0])
            raise DataError(f"non-finite value at line {row + 2}, column {name!r}")
        columns.append(values)
    return np.column_stack(columns), tables


def load_csv(source: CsvSource, label_column: str, positive_label: str) -> Dataset:
    """Read a headed, comma-delimited CSV into a two-class ``Dataset``.

    Non-numeric feature columns are integer-encoded with codes assigned in
    lexicographic order of their categories. Row order is preserved.
    """
    frame = _read_frame(source)
    if label_column not in frame.columns:
        raise DataError(
            f"unknown label column {label_column!r}; available columns: {', '.join(frame.columns)}"
        )

    labels = tuple(frame[label_column])
    distinct = sorted(set(labels))
    if len(distinct) < 2:
        raise DataError(
            f"label column {label_column!r} holds fewer than two distinct labels: {distinct}"
        )
    if len(distinct) > 2:
        raise DataError(
            f"label column {label_column!r} is not binary: found {len(distinct)} distinct labels"
        )
    if positive_label not in distinct:
        raise DataError(f"positive label {positive_label!r} not found; labels are {distinct}")

    feature_names = [name for name in frame.columns if name != label_column]
    if not feature_names:
        raise DataError("CSV has no feature columns besides the label column")

    features, categories = _encode_columns(frame, feature_names)
    negative_label = next(label for label in distinct if label != positive_label)
    dataset = Dataset(
        features=features,
        labels=labels,
        positive_label=positive_label,
        column_names=tuple(feature_names),
        negative_label=negative_label,
        label_column=label_column,
        label_position=list(frame.columns).index(label_column),
        categories=categories,
    )
    logger.info(
        "loaded %s: %d rows, %d attributes, minority=%d, majority=%d",
        _describe(source), dataset.n_rows, dataset.n_features,
        dataset.minority_count, dataset.majority_count,
    )
    return dataset


def load_scoring_csv(
    source: CsvSource,
    column_names: Sequence[str],
    categories: Mapping[str, Tuple[str, ...]],
    positive_label: str,
    negative_label: str,
    label_column: Optional[str] = None,
) -> Dataset:
    """Rows to score with an already trained model.

    Columns must match ``column_names`` in name and order, categorical columns
    are encoded with the training ``categories``, and the label column, if
    present, may hold any number of classes.
    """
    frame = _read_frame(source)
    if label_column is not None and label_column not in frame.columns:
        raise DataError(
            f"unknown label column {label_column!r}; available columns: {', '.join(frame.columns)}"
        )
    feature_names = tuple(name for name in frame.columns if name != label_column)
    if feature_names != tuple(column_names):
        raise DataError(
            f"columns {list(feature_names)} do not match the model's columns {list(column_names)}"
        )

    features, _ = _encode_columns(frame, feature_names, categories)
    labels = tuple(frame[label_column]) if label_column is not None else ("",) * len(frame)
    return Dataset(
        features=features,
        labels=labels,
        positive_label=positive_label,
        column_names=feature_names,
        negative_label=negative_label,
        label_column=label_column or "class",
        label_position=None if label_column is None else list(frame.columns).index(label_column),
        categories=dict(categories),
    )


def write_csv(ds: Dataset, target: CsvSource) -> None:
    """Write ``ds`` back out; floats use the shortest round-trip representation."""
    frame = pd.DataFrame({
        name: [repr(float(value)) for value in ds.features[:, j]]
        for j, name in enumerate(ds.column_names)
    })
    position = ds.n_features if ds.label_position is None else min(ds.label_position, ds.n_features)
    frame.insert(position, ds.label_column, list(ds.labels))
    frame.to_csv(target, index=False, lineterminator="\n")


# ============================================================================
# PARTITIONING
# ============================================================================

def partition(ds: Dataset) -> Tuple[list, list]:
    """Row indices of the minority (positive) and majority classes, in row order."""
    minority = [i for i, label in enumerate(ds.labels) if label == ds.positive_label]
    majority = [i for i, label in enumerate(ds.labels) if label != ds.positive_label]
    return minority, majority


def stratified_split(ds: Dataset, train_fraction: float, seed: int) -> SplitPair:
    if not 0.0 < train_fraction < 1.0:
        raise DataError(f"train fraction must lie strictly between 0 and 1, got {train_fraction}")

    rng = make_rng(seed)
    train_rows, test_rows = [], []
    for label in (ds.positive_label, ds.negative_label):
        rows = [i for i, value in enumerate(ds.labels) if value == label]
        n_train = round_half_up(len(rows) * train_fraction)
        if n_train == 0 or n_train == len(rows):
            raise DataError(
                f"class {label!r} has {len(rows)} rows; a {train_fraction:g} split would leave "
                f"{'train' if n_train == 0 else 'test'} without it"
            )
        shuffled = [int(i) for i in rng.permutation(rows)]
        train_rows.extend(shuffled[:n_train])
        test_rows.extend(shuffled[n_train:])

    train_rows.sort()
    test_rows.sort()
    logger.info("split %d rows into train=%d, test=%d", ds.n_rows, len(train_rows), len(test_rows))
    return SplitPair(
        train=ds.take(train_rows),
        test=ds.take(test_rows),
        train_fraction=train_fraction,
        train_rows=tuple(train_rows),
        test_rows=tuple(test_rows),
    )


# ============================================================================
# STANDARDIZATION
# ============================================================================

def fit_standardizer(train: Dataset) -> Standardizer:
    if train.n_rows == 0:
        raise DataError("cannot fit a standardizer on an empty dataset")
    mean = train.features.mean(axis=0)
    std = train.features.std(axis=0)
    constant = std <= CONSTANT_COLUMN_TOLERANCE * np.maximum(1.0, np.abs(mean))
    if constant.any():
        names = [name for name, flag in zip(train.column_names, constant) if flag]
        logger.warning("constant columns map to 0 after standardizing: %s", ", ".join(names))
    return Standardizer(mean=mean, std=std, constant=constant, column_names=train.column_names)


def _check_columns(s: Standardizer, ds: Dataset) -> None:
    if ds.n_features != len(s.mean):
        raise DataError(
            f"standardizer was fitted on {len(s.mean)} columns, dataset has {ds.n_features}"
        )


def apply_standardizer(s: Standardizer, ds: Dataset) -> Dataset:
    _check_columns(s, ds)
    scaled = (ds.features - s.mean) / s.scale
    scaled[:, s.constant] = 0.0
    return ds.with_features(scaled)


def inverse_standardizer(s: Standardizer, ds: Dataset) -> Dataset:
    _check_columns(s, ds)
    restored = ds.features * s.scale + s.mean
    restored[:, s.constant] = s.mean[s.constant]
    return ds.with_features(restored)
