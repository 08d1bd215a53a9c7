import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_force_best_split, random_dataset, slow_entropy
from msitree.data import Dataset
from msitree.split import Split, best_split, entropy, partition, weighted_entropy


def subset(X, y):
    return Dataset(np.asarray(X, dtype=float).reshape(len(y), -1), y).subset()


@pytest.mark.parametrize("labels, expected", [
    ((0, 0, 0, 0), 0.0),
    ((0, 1), 1.0),
    ((0, 0, 1), 0.918296),  # -(2/3)log2(2/3) - (1/3)log2(1/3)
])
def test_entropy_examples(labels, expected):
    assert entropy(np.array(labels)) == pytest.approx(expected, abs=1e-6)


def test_entropy_of_empty_subset_raises():
    with pytest.raises(ValueError):
        entropy(np.array([], dtype=int))


def test_weighted_entropy_examples():
    q = subset([1, 2, 3, 4], [0, 0, 1, 1])
    assert weighted_entropy(q, Split(0, 2.5)) == pytest.approx(0.0, abs=1e-12)
    # (3/4) * H(0,0,1) + (1/4) * 0
    assert weighted_entropy(q, Split(0, 3.5)) == pytest.approx(0.688722, abs=1e-6)
    pure = subset([1, 2, 3], [1, 1, 1])
    assert weighted_entropy(pure, Split(0, 1.5)) == 0.0


def test_weighted_entropy_rejects_one_sided_split():
    with pytest.raises(ValueError):
        weighted_entropy(subset([1, 2], [0, 1]), Split(0, 10.0))


def test_best_split_examples():
    assert best_split(subset([[1, 1], [1, 1], [1, 1]], [0, 1, 0])) is None
    assert best_split(subset([1, 2, 3], [1, 1, 1])) is None
    q = subset([1, 2, 3, 4], [0, 0, 1, 1])
    s = best_split(q)
    assert s == Split(0, 2.5)
    assert weighted_entropy(q, s) == 0.0


def test_best_split_ties_prefer_lowest_feature_then_threshold():
    # both features separate perfectly; feature 0 must win
    q = subset([[1, 5], [2, 6], [3, 7], [4, 8]], [0, 0, 1, 1])
    assert best_split(q) == Split(0, 2.5)
    # labels 0,1,0: thresholds 1.5 and 2.5 tie
    q = subset([1, 2, 3], [0, 1, 0])
    assert best_split(q) == Split(0, 1.5)


def test_min_leaf_excludes_small_sides():
    q = subset([1, 2, 3, 4, 5, 6], [1, 0, 0, 0, 0, 0])
    assert best_split(q) == Split(0, 1.5)
    s = best_split(q, min_leaf=2)
    left, right = partition(q, s)
    assert min(len(left), len(right)) >= 2


def test_adjacent_float_midpoint_stays_left():
    lo = 1.0
    hi = np.nextafter(lo, 2.0)
    q = subset([lo, hi], [0, 1])
    s = best_split(q)
    left, right = partition(q, s)
    assert len(left) == 1 and len(right) == 1


def test_matches_brute_force_oracle():
    rng = np.random.default_rng(7)
    for _ in range(100):
        d = random_dataset(rng, grid=int(rng.integers(2, 8)))
        expected, _ = brute_force_best_split(d.features, d.labels)
        assert best_split(d.subset()) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_best_split_minimises_and_partitions(seed):
    rng = np.random.default_rng(seed)
    d = random_dataset(rng, n=int(rng.integers(2, 40)))
    q = d.subset()
    s = best_split(q)
    if s is None:
        return
    left, right = partition(q, s)
    assert len(left) and len(right)
    assert set(left.indices) | set(right.indices) == set(q.indices)
    assert not set(left.indices) & set(right.indices)
    assert weighted_entropy(q, s) <= entropy(q) + 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_row_order_does_not_matter(seed):
    rng = np.random.default_rng(seed)
    d = random_dataset(rng, grid=5)
    perm = rng.permutation(d.n)
    assert best_split(d.subset()) == best_split(d.subset(perm))


def test_slow_entropy_agrees():
    rng = np.random.default_rng(3)
    for _ in range(50):
        y = rng.integers(0, 4, size=int(rng.integers(1, 30)))
        assert entropy(y) == pytest.approx(slow_entropy(y.tolist()), abs=1e-12)
