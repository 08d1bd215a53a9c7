"""Minimum Surfeit and Inaccuracy tree growth.

Starting from a single leaf, every round tentatively grows each candidate
leaf with its best entropy split, scores the whole tree, and keeps only the
single growth with the lowest cost. Growth stops as soon as no candidate
lowers the cost strictly, or when no leaf can be split any further.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexity import CombinerKind, CompressorKind, CostBreakdown, tree_cost
from .data import Dataset
from .split import Split, best_split
from .tree import Tree, TreeNode


@dataclass(frozen=True)
class MsiConfig:
    compressor: CompressorKind = CompressorKind.BZ2
    combiner: CombinerKind = CombinerKind.HARMONIC

    def __post_init__(self):
        object.__setattr__(self, "compressor", CompressorKind(self.compressor))
        object.__setattr__(self, "combiner", CombinerKind(self.combiner))


@dataclass(frozen=True)
class GrowthStep:
    iteration: int
    leaf: int
    split: Split
    before: CostBreakdown
    after: CostBreakdown


@dataclass
class GrowthTrace:
    steps: list[GrowthStep] = field(default_factory=list)
    # every tentative evaluation, committed or not: (iteration, leaf uid, cost)
    evaluations: list[tuple[int, int, CostBreakdown]] = field(default_factory=list)
    # leaves dropped because best_split found nothing: (iteration, leaf uid)
    discarded: list[tuple[int, int]] = field(default_factory=list)
    # candidates still open when growth stopped on cost
    rejected: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def cost_of(tree: Tree, dataset: Dataset, cfg: MsiConfig = MsiConfig()) -> CostBreakdown:
    return tree_cost(cfg.compressor, cfg.combiner, tree, dataset)


def build_tree(dataset: Dataset, cfg: MsiConfig = MsiConfig(), *,
               observer=None) -> tuple[Tree, GrowthTrace]:
    """Grow a tree on ``dataset``; returns the tree and the record of its growth.

    ``observer``, if given, is called as ``observer(tree, leaf, cost)`` while
    each candidate growth is attached, before it is undone.
    """
    if dataset.n == 0:
        raise ValueError("cannot build a tree on an empty dataset")
    tree = Tree.leaf(dataset)
    best = cost_of(tree, dataset, cfg)
    trace = GrowthTrace()
    candidates: list[TreeNode] = [tree.root]
    # best_split only depends on the leaf's data, which never changes
    splits: dict[int, Split | None] = {}

    iteration = 0
    while candidates:
        chosen = None
        incumbent = best
        for leaf in list(candidates):
            if leaf.uid not in splits:
                splits[leaf.uid] = best_split(leaf.data)
            split = splits[leaf.uid]
            if split is None:
                candidates.remove(leaf)
                trace.discarded.append((iteration, leaf.uid))
                continue
            left, right = leaf.grow(split)
            leaf.attach(split, left, right)
            cost = cost_of(tree, dataset, cfg)
            if observer is not None:
                observer(tree, leaf, cost)
            leaf.detach()
            trace.evaluations.append((iteration, leaf.uid, cost))
            if cost.combined < best.combined:
                best = cost
                chosen = (leaf, split, left, right)

        if chosen is None:
            trace.rejected = [leaf.uid for leaf in candidates]
            return tree, trace

        leaf, split, left, right = chosen
        leaf.attach(split, left, right)
        candidates.remove(leaf)
        candidates += [left, right]
        trace.steps.append(GrowthStep(iteration, leaf.uid, split, incumbent, best))
        iteration += 1

    return tree, trace
