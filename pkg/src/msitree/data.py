"""Datasets, CSV ingestion, splitting and the synthetic generators."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

BLOB_CENTERS = ((0.0, 0.0), (10.0, 10.0))


class DatasetError(ValueError):
    """Raised for malformed or unusable datasets."""


def format_real(value: float) -> str:
    """Shortest decimal text that round-trips ``value``, without a trailing ``.0``."""
    text = repr(float(value))
    if text.endswith(".0"):
        text = text[:-2]
    return text


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix ``features`` (n x m) with integer class ``labels``."""

    features: np.ndarray
    labels: np.ndarray
    attribute_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64, copy=True)
        labels = np.array(self.labels, copy=True)
        if features.ndim != 2:
            raise DatasetError(f"features must be 2-D, got shape {features.shape}")
        if labels.ndim != 1 or labels.shape[0] != features.shape[0]:
            raise DatasetError("labels must be a vector with one entry per feature row")
        if labels.size and not np.issubdtype(labels.dtype, np.integer):
            if not np.all(np.equal(np.mod(labels, 1), 0)):
                raise DatasetError("labels must be integers")
        labels = labels.astype(np.int64)
        if labels.size and labels.min() < 0:
            raise DatasetError("labels must be non-negative")
        if not np.all(np.isfinite(features)):
            raise DatasetError("features must be finite")
        names = tuple(self.attribute_names) or tuple(
            f"X{j + 1}" for j in range(features.shape[1])
        )
        if len(names) != features.shape[1]:
            raise DatasetError("attribute_names length does not match feature columns")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "attribute_names", names)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def m(self) -> int:
        return self.features.shape[1]

    @property
    def max_label(self) -> int:
        """G, the largest observed label."""
        return int(self.labels.max())

    def subset(self, indices=None) -> "DataSubset":
        if indices is None:
            indices = np.arange(self.n)
        return DataSubset(self, indices)

    def take(self, indices) -> "Dataset":
        """New dataset made of the given rows (in the given order)."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.features[indices], self.labels[indices], self.attribute_names)


class DataSubset:
    """A view of some rows of a parent :class:`Dataset`."""

    __slots__ = ("parent", "indices")

    def __init__(self, parent: Dataset, indices):
        idx = np.asarray(indices, dtype=np.int64).reshape(-1)
        if idx.size:
            if idx.min() < 0 or idx.max() >= parent.n:
                raise DatasetError("row index out of range")
            if np.unique(idx).size != idx.size:
                raise DatasetError("row indices must be unique")
        idx.setflags(write=False)
        self.parent = parent
        self.indices = idx

    def __len__(self) -> int:
        return int(self.indices.size)

    @property
    def features(self) -> np.ndarray:
        return self.parent.features[self.indices]

    @property
    def labels(self) -> np.ndarray:
        return self.parent.labels[self.indices]

    def __repr__(self):
        return f"DataSubset(d={len(self)})"


@dataclass(frozen=True)
class SplitRatio:
    train_fraction: float = 0.7
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise DatasetError("train_fraction must lie strictly between 0 and 1")


def _find_label_column(header: list[str] | None, label_column, width: int) -> int:
    if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
        if header is None:
            raise DatasetError(f"label column {label_column!r} given by name but file has no header")
        try:
            return header.index(label_column)
        except ValueError:
            raise DatasetError(f"no column named {label_column!r}") from None
    col = int(label_column)
    if col < 0:
        col += width
    if not 0 <= col < width:
        raise DatasetError(f"label column {label_column} out of range for {width} columns")
    return col


def _read_rows(path: Path, has_header: bool) -> tuple[list[str] | None, list[list[str]], int]:
    with path.open(newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    header = None
    if has_header:
        if not rows:
            raise DatasetError(f"{path}: empty file")
        header = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
    if not rows:
        raise DatasetError(f"{path}: no data rows")
    width = len(header) if header is not None else len(rows[0])
    first_line = 2 if has_header else 1
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DatasetError(f"{path}:{first_line + i}: expected {width} cells, got {len(row)}")
    return header, rows, first_line


def _parse_columns(path: Path, rows: list[list[str]], columns: list[int], first_line: int) -> np.ndarray:
    out = np.empty((len(rows), len(columns)), dtype=np.float64)
    for i, row in enumerate(rows):
        for k, j in enumerate(columns):
            cell = row[j].strip()
            try:
                value = float(cell)
            except ValueError:
                raise DatasetError(
                    f"{path}:{first_line + i}: column {j + 1}: cannot parse {cell!r}") from None
            if not math.isfinite(value):
                raise DatasetError(f"{path}:{first_line + i}: column {j + 1}: non-finite value {cell!r}")
            out[i, k] = value
    return out


def load_csv(path, label_column=-1, has_header: bool = True) -> Dataset:
    """Read a comma-separated file into a :class:`Dataset`.

    ``label_column`` is a column index (negative counts from the end) or a
    header name. Integer label cells are kept as-is; any non-integer label
    maps to dense ids in first-appearance order.
    """
    path = Path(path)
    header, rows, first_line = _read_rows(path, has_header)
    width = len(rows[0])
    if width < 2:
        raise DatasetError(f"{path}: need at least one feature column and a label column")
    label_col = _find_label_column(header, label_column, width)
    feature_cols = [j for j in range(width) if j != label_col]
    features = _parse_columns(path, rows, feature_cols, first_line)
    raw_labels = [row[label_col].strip() for row in rows]
    try:
        labels = [int(cell) for cell in raw_labels]
        if min(labels) < 0:
            raise ValueError
    except ValueError:
        mapping: dict[str, int] = {}
        labels = [mapping.setdefault(cell, len(mapping)) for cell in raw_labels]

    names = tuple(header[j] for j in feature_cols) if header is not None else ()
    return Dataset(features, np.asarray(labels, dtype=np.int64), names)


def load_features(path, has_header: bool = True, drop_column=None) -> np.ndarray:
    """Feature matrix of a CSV without labels; ``drop_column`` (index or name) is skipped."""
    path = Path(path)
    header, rows, first_line = _read_rows(path, has_header)
    width = len(rows[0])
    columns = list(range(width))
    if drop_column is not None:
        columns.remove(_find_label_column(header, drop_column, width))
    return _parse_columns(path, rows, columns, first_line)


def save_csv(dataset: Dataset, path, label_name: str = "label") -> None:
    """Write ``dataset`` with a header row; the label is the last column."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([*dataset.attribute_names, label_name])
        for x, y in zip(dataset.features, dataset.labels):
            writer.writerow([*(format_real(v) for v in x), int(y)])


def train_test_split(dataset: Dataset, ratio: SplitRatio) -> tuple[Dataset, Dataset]:
    """Shuffle rows with ``ratio.seed`` and cut at ``round(train_fraction * n)``."""
    n = dataset.n
    if n < 2:
        raise DatasetError("need at least two rows to split")
    order = np.random.default_rng(ratio.seed).permutation(n)
    n_train = int(round(ratio.train_fraction * n))
    n_train = min(max(n_train, 1), n - 1)
    return dataset.take(np.sort(order[:n_train])), dataset.take(np.sort(order[n_train:]))


def make_error_point_dataset(seed: int = 0, n_points: int = 100) -> Dataset:
    """Uniform points on [0, 100]^2 labelled 0 left of X1 = 50 and 1 otherwise,
    plus one mislabelled class-1 point dropped inside the class-0 region."""
    rng = np.random.default_rng(seed)
    points = rng.uniform(0.0, 100.0, size=(n_points, 2))
    labels = (points[:, 0] >= 50.0).astype(np.int64)
    error = np.array([rng.uniform(0.0, 45.0), rng.uniform(0.0, 100.0)])
    return Dataset(np.vstack([points, error]), np.append(labels, 1))


def make_blobs(std_dev: float, points_per_blob: int = 50, seed: int = 0,
               centers: Sequence[Sequence[float]] = BLOB_CENTERS) -> Dataset:
    """Isotropic Gaussian clusters, one class per center."""
    if not std_dev > 0:
        raise DatasetError("std_dev must be positive")
    if points_per_blob < 1:
        raise DatasetError("points_per_blob must be positive")
    rng = np.random.default_rng(seed)
    blocks, labels = [], []
    for label, center in enumerate(centers):
        blocks.append(rng.normal(loc=center, scale=std_dev, size=(points_per_blob, len(center))))
        labels.append(np.full(points_per_blob, label, dtype=np.int64))
    return Dataset(np.vstack(blocks), np.concatenate(labels))
