"""Decision trees grown by minimum surfeit and inaccuracy (MSI), with a greedy
baseline and experiment runners."""

from .baseline import GreedyConfig, build_greedy_tree
from .complexity import CombinerKind, CompressorKind, CostBreakdown, tree_cost
from .data import Dataset, DataSubset, SplitRatio, load_csv, make_blobs, make_error_point_dataset, train_test_split
from .msi import GrowthTrace, MsiConfig, build_tree, cost_of
from .split import Split, best_split, entropy, weighted_entropy
from .tree import Tree, TreeNode, accuracy, max_depth, node_count, predict, serialize

__all__ = [
    "CombinerKind", "CompressorKind", "CostBreakdown", "Dataset", "DataSubset", "GreedyConfig",
    "GrowthTrace", "MsiConfig", "Split", "SplitRatio", "Tree", "TreeNode", "accuracy", "best_split",
    "build_greedy_tree", "build_tree", "cost_of", "entropy", "load_csv", "make_blobs",
    "make_error_point_dataset", "max_depth", "node_count", "predict", "serialize", "train_test_split",
    "tree_cost", "weighted_entropy",
]
