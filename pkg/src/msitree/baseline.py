"""Greedy recursive-partitioning baseline (CART-style growth, entropy splits)."""

from __future__ import annotations

from dataclasses import dataclass

from .data import Dataset
from .split import best_split
from .tree import Tree


@dataclass(frozen=True)
class GreedyConfig:
    min_samples_split: int = 5
    min_samples_leaf: int = 1
    max_depth: int | None = None

    def __post_init__(self):
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be at least 2")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be at least 1")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")


def build_greedy_tree(dataset: Dataset, cfg: GreedyConfig = GreedyConfig()) -> Tree:
    """Split every impure node with its best admissible split until the size
    and depth limits stop it. No pruning."""
    if dataset.n == 0:
        raise ValueError("cannot build a tree on an empty dataset")
    tree = Tree.leaf(dataset)
    stack = [(tree.root, 0)]
    while stack:
        node, depth = stack.pop()
        if len(node.data) < cfg.min_samples_split:
            continue
        if cfg.max_depth is not None and depth >= cfg.max_depth:
            continue
        split = best_split(node.data, min_leaf=cfg.min_samples_leaf)
        if split is None:
            continue
        left, right = node.grow(split)
        node.attach(split, left, right)
        stack.append((right, depth + 1))
        stack.append((left, depth + 1))
    return tree
