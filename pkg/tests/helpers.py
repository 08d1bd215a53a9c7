"""Independent reference implementations and generators shared by the tests."""

import math
from collections import Counter

import numpy as np

from msitree.data import Dataset
from msitree.split import TIE_RTOL, Split
from msitree.tree import Tree, TreeNode


def slow_entropy(labels):
    n = len(labels)
    return -sum(c / n * math.log2(c / n) for c in Counter(labels).values())


def brute_force_best_split(X, y):
    """Every feature, every midpoint of consecutive distinct values, plain lists."""
    X = [list(map(float, row)) for row in X]
    y = list(map(int, y))
    if len(set(y)) <= 1:
        return None, None
    scored = []
    for j in range(len(X[0])):
        values = sorted({row[j] for row in X})
        for lo, hi in zip(values, values[1:]):
            w = lo + (hi - lo) / 2.0
            if not lo <= w < hi:
                w = lo
            left = [yi for row, yi in zip(X, y) if row[j] <= w]
            right = [yi for row, yi in zip(X, y) if not row[j] <= w]
            h = (len(left) / len(y) * slow_entropy(left)
                 + len(right) / len(y) * slow_entropy(right))
            scored.append((j, w, h))
    if not scored:
        return None, None
    best = min(h for _, _, h in scored)
    limit = best + TIE_RTOL * max(1.0, abs(best))
    for j, w, h in scored:  # already in (feature, threshold) order
        if h <= limit:
            return Split(j, w), h


def random_dataset(rng, n=None, m=None, n_classes=None, grid=None):
    n = n or int(rng.integers(1, 51))
    m = m or int(rng.integers(1, 5))
    n_classes = n_classes or int(rng.integers(1, 4))
    if grid:
        X = rng.integers(0, grid, size=(n, m)).astype(float)
    else:
        X = rng.normal(size=(n, m)).round(2)
    return Dataset(X, rng.integers(0, n_classes, size=n))


def random_tree(rng, m, depth, n_classes=3, p_split=0.7):
    """Random tree structure over ``m`` attributes (no training data)."""

    def grow(level):
        node = TreeNode(label=int(rng.integers(0, n_classes)))
        if level < depth and rng.random() < p_split:
            split = Split(int(rng.integers(0, m)), round(float(rng.normal(scale=10)), int(rng.integers(0, 6))))
            node.attach(split, grow(level + 1), grow(level + 1))
        return node

    return Tree(grow(0))


def perfect_tree(depth, feature=0):
    """Complete tree of the given depth splitting on one attribute."""

    def grow(level, lo, hi):
        node = TreeNode(label=level % 2)
        if level < depth:
            mid = (lo + hi) / 2
            node.attach(Split(feature, mid), grow(level + 1, lo, mid), grow(level + 1, mid, hi))
        return node

    return Tree(grow(0, 0.0, 1024.0))


def check_msi_invariants(dataset, cfg):
    """Run MSI and assert the growth-loop invariants; returns the tree and trace."""
    from msitree.msi import build_tree, cost_of
    from msitree.split import best_split
    from msitree.tree import model_text, serialize

    evaluations = []

    def observe(tree, leaf, cost):
        grown = serialize(tree)
        saved = (leaf.split, leaf.left, leaf.right)
        leaf.detach()
        base = serialize(tree)
        leaf.attach(*saved)
        assert leaf.split == best_split(leaf.data)  # memoised split is still the best one
        evaluations.append((base, grown, cost))

    tree, trace = build_tree(dataset, cfg, observer=observe)

    # committed costs strictly decrease, each step starting where the last ended
    for a, b in zip(trace.steps, trace.steps[1:]):
        assert b.before == a.after
    for step in trace.steps:
        assert step.after.combined < step.before.combined

    # every evaluation sees the committed tree, never a leftover candidate
    bases = [base for base, _, _ in evaluations]
    committed = {serialize(tree)}
    by_iteration = {}
    for (iteration, _, _), base in zip(trace.evaluations, bases):
        by_iteration.setdefault(iteration, set()).add(base)
    assert all(len(v) == 1 for v in by_iteration.values())
    if evaluations:
        last = max(by_iteration)
        if last == len(trace.steps):
            assert by_iteration[last] == committed

    # the committed growth is the cheapest evaluated candidate of its round
    for step in trace.steps:
        round_costs = [c.combined for it, _, c in trace.evaluations if it == step.iteration]
        assert step.after.combined == min(round_costs)

    # no remaining leaf can be grown at a lower cost
    final = cost_of(tree, dataset, cfg).combined
    for leaf in tree.leaves():
        split = best_split(leaf.data)
        if split is None:
            continue
        assert leaf.uid in trace.rejected
        leaf.attach(split, *leaf.grow(split))
        grown = cost_of(tree, dataset, cfg).combined
        leaf.detach()
        assert not grown < final
    assert serialize(tree) in committed

    again, _ = build_tree(dataset, cfg)
    assert model_text(again) == model_text(tree)
    return tree, trace
