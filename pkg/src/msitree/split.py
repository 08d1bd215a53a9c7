"""Class-label entropy and exhaustive best-split search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import DataSubset

# Relative tolerance under which two weighted entropies count as a tie. The
# value only absorbs floating-point noise between algebraically equal sums.
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class Split:
    """Send a row left when ``x[feature] <= threshold``."""

    feature: int
    threshold: float


def _labels(q) -> np.ndarray:
    return q.labels if isinstance(q, DataSubset) else np.asarray(q)


def entropy(q) -> float:
    """Shannon entropy (bits) of the label distribution of a subset or label array."""
    labels = _labels(q)
    if labels.size == 0:
        raise ValueError("entropy of an empty subset")
    counts = np.bincount(labels)
    p = counts[counts > 0] / labels.size
    return float(max(0.0, -np.sum(p * np.log2(p))))


def partition(q: DataSubset, split: Split) -> tuple[DataSubset, DataSubset]:
    go_left = q.features[:, split.feature] <= split.threshold
    return DataSubset(q.parent, q.indices[go_left]), DataSubset(q.parent, q.indices[~go_left])


def weighted_entropy(q: DataSubset, split: Split) -> float:
    left, right = partition(q, split)
    if len(left) == 0 or len(right) == 0:
        raise ValueError(f"{split} leaves one side empty")
    n = len(q)
    return len(left) / n * entropy(left) + len(right) / n * entropy(right)


def _xlog2x(c: np.ndarray) -> np.ndarray:
    out = np.zeros_like(c, dtype=np.float64)
    pos = c > 0
    out[pos] = c[pos] * np.log2(c[pos])
    return out


def _midpoint(lo: float, hi: float) -> float:
    w = lo + (hi - lo) / 2.0
    # adjacent floats: the midpoint may round onto ``hi``
    return w if lo <= w < hi else lo


def split_scores(q: DataSubset, feature: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thresholds (ascending), their weighted entropies and left-side sizes for one feature."""
    x = q.features[:, feature]
    y = q.labels
    order = np.argsort(x, kind="stable")
    xs, ys = x[order], y[order]
    cut = np.flatnonzero(xs[:-1] < xs[1:])
    if cut.size == 0:
        return np.empty(0), np.empty(0), np.empty(0, dtype=np.int64)
    n = xs.size
    onehot = np.zeros((n, int(ys.max()) + 1))
    onehot[np.arange(n), ys] = 1.0
    left = np.cumsum(onehot, axis=0)[cut]
    right = onehot.sum(axis=0) - left
    n_left = (cut + 1).astype(np.float64)
    n_right = n - n_left
    total = (_xlog2x(n_left) - _xlog2x(left).sum(axis=1)
             + _xlog2x(n_right) - _xlog2x(right).sum(axis=1))
    thresholds = np.array([_midpoint(xs[i], xs[i + 1]) for i in cut])
    return thresholds, np.maximum(total / n, 0.0), cut + 1


def best_split(q: DataSubset, min_leaf: int = 1) -> Split | None:
    """Split of minimum weighted entropy, or ``None`` when ``q`` is pure or
    no threshold separates it.

    Candidate thresholds are the midpoints between consecutive distinct
    values of each feature. Ties go to the lowest feature index, then the
    lowest threshold. ``min_leaf`` drops candidates leaving fewer rows than
    that on either side.
    """
    n = len(q)
    if n < 2 or np.all(q.labels == q.labels[0]):
        return None
    scored = []
    for j in range(q.parent.m):
        thresholds, scores, n_left = split_scores(q, j)
        keep = (n_left >= min_leaf) & (n - n_left >= min_leaf)
        scored.append((thresholds[keep], scores[keep]))
    mins = [s.min() for _, s in scored if s.size]
    if not mins:
        return None
    limit = min(mins)
    limit += TIE_RTOL * max(1.0, abs(limit))
    for j, (thresholds, scores) in enumerate(scored):
        hits = np.flatnonzero(scores <= limit)
        if hits.size:
            return Split(j, float(thresholds[hits[0]]))
    return None
