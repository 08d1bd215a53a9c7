"""Binary decision trees: structure, prediction, metrics and text form.

The text form is a tiny Python-like program::

    def tree{X1,X2}:
        if X1 <= 50.5:
            return 0
        else:
            return 1

Only attributes used by some split appear in the header; attributes are
numbered from 1.
"""

from __future__ import annotations

import re
from itertools import count
from pathlib import Path

import numpy as np

from .data import DataSubset, Dataset, format_real
from .split import Split, partition

INDENT = "    "


class ModelFormatError(ValueError):
    """Raised when tree text does not follow the template."""


def forecast(q) -> int:
    """Most frequent label of a subset (or label array); ties go to the smallest label."""
    labels = q.labels if isinstance(q, DataSubset) else np.asarray(q)
    if labels.size == 0:
        raise ValueError("forecast of an empty subset")
    return int(np.argmax(np.bincount(labels)))


_ids = count()


class TreeNode:
    """Leaf (no split, no children) or internal node (split plus two children).

    ``data`` is the training subset that reached the node; it is ``None`` for
    trees read back from text.
    """

    __slots__ = ("data", "label", "split", "left", "right", "uid")

    def __init__(self, data: DataSubset | None = None, label: int | None = None):
        if label is None:
            label = forecast(data)
        self.data = data
        self.label = int(label)
        self.split: Split | None = None
        self.left: TreeNode | None = None
        self.right: TreeNode | None = None
        self.uid = next(_ids)

    @property
    def is_leaf(self) -> bool:
        return self.split is None

    def attach(self, split: Split, left: "TreeNode", right: "TreeNode") -> None:
        self.split, self.left, self.right = split, left, right

    def detach(self) -> None:
        self.split = self.left = self.right = None

    def grow(self, split: Split) -> tuple["TreeNode", "TreeNode"]:
        """Children for ``split`` (not attached)."""
        data_l, data_r = partition(self.data, split)
        return TreeNode(data_l), TreeNode(data_r)

    def __repr__(self):
        if self.is_leaf:
            return f"Leaf({self.label})"
        return f"Node(X{self.split.feature + 1} <= {self.split.threshold})"


class Tree:
    def __init__(self, root: TreeNode, trained_on: Dataset | None = None):
        self.root = root
        self.trained_on = trained_on

    @classmethod
    def leaf(cls, dataset: Dataset) -> "Tree":
        return cls(TreeNode(dataset.subset()), dataset)

    def nodes(self):
        """Pre-order traversal (node, depth)."""
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            yield node, depth
            if not node.is_leaf:
                stack.append((node.right, depth + 1))
                stack.append((node.left, depth + 1))

    def leaves(self) -> list[TreeNode]:
        return [node for node, _ in self.nodes() if node.is_leaf]

    def used_features(self) -> list[int]:
        return sorted({node.split.feature for node, _ in self.nodes() if not node.is_leaf})

    def __str__(self):
        return serialize(self)


def node_count(tree: Tree) -> int:
    return sum(1 for _ in tree.nodes())


def max_depth(tree: Tree) -> int:
    """Edges on the longest root-to-leaf path (a lone leaf has depth 0)."""
    return max(depth for _, depth in tree.nodes())


def _check_row(tree: Tree, x: np.ndarray) -> None:
    if tree.trained_on is not None and x.shape[-1] != tree.trained_on.m:
        raise ValueError(f"expected {tree.trained_on.m} features, got {x.shape[-1]}")
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite feature value")


def predict(tree: Tree, x) -> int:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("predict takes a single feature vector")
    _check_row(tree, x)
    node = tree.root
    while not node.is_leaf:
        if node.split.feature >= x.size:
            raise ValueError(f"attribute X{node.split.feature + 1} missing from input")
        node = node.left if x[node.split.feature] <= node.split.threshold else node.right
    return node.label


def predict_many(tree: Tree, features) -> np.ndarray:
    """Row-wise :func:`predict` for a 2-D array."""
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("predict_many takes a 2-D array")
    _check_row(tree, X)
    out = np.empty(X.shape[0], dtype=np.int64)
    stack = [(tree.root, np.arange(X.shape[0]))]
    while stack:
        node, rows = stack.pop()
        if node.is_leaf:
            out[rows] = node.label
            continue
        if node.split.feature >= X.shape[1]:
            raise ValueError(f"attribute X{node.split.feature + 1} missing from input")
        go_left = X[rows, node.split.feature] <= node.split.threshold
        stack.append((node.left, rows[go_left]))
        stack.append((node.right, rows[~go_left]))
    return out


def misclassified(tree: Tree, dataset: Dataset) -> DataSubset:
    wrong = predict_many(tree, dataset.features) != dataset.labels
    return DataSubset(dataset, np.flatnonzero(wrong))


def accuracy(tree: Tree, dataset: Dataset) -> float:
    if dataset.n == 0:
        raise ValueError("accuracy on an empty dataset")
    return 1.0 - len(misclassified(tree, dataset)) / dataset.n


def serialize(tree: Tree) -> str:
    attrs = ",".join(f"X{j + 1}" for j in tree.used_features())
    lines = [f"def tree{{{attrs}}}:"]

    def emit(node: TreeNode, level: int) -> None:
        pad = INDENT * level
        if node.is_leaf:
            lines.append(f"{pad}return {node.label}")
            return
        lines.append(f"{pad}if X{node.split.feature + 1} <= {format_real(node.split.threshold)}:")
        emit(node.left, level + 1)
        lines.append(f"{pad}else:")
        emit(node.right, level + 1)

    emit(tree.root, 1)
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"def tree\{((?:X\d+(?:,X\d+)*)?)\}:$")
_IF = re.compile(r"if X(\d+) <= (\S+):$")
_RETURN = re.compile(r"return (\d+)$")


def parse_tree(text: str) -> Tree:
    """Inverse of :func:`serialize` (nodes come back without training data)."""
    lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines or not _HEADER.match(lines[0]):
        raise ModelFormatError("missing 'def tree{...}:' header")
    pos = 1

    def block(level: int) -> TreeNode:
        nonlocal pos
        if pos >= len(lines):
            raise ModelFormatError("unexpected end of model text")
        line = lines[pos]
        pad = INDENT * level
        if not line.startswith(pad) or line[len(pad)] == " ":
            raise ModelFormatError(f"bad indentation: {line!r}")
        body = line[len(pad):]
        pos += 1
        if m := _RETURN.match(body):
            return TreeNode(label=int(m.group(1)))
        m = _IF.match(body)
        if not m:
            raise ModelFormatError(f"cannot parse line: {line!r}")
        feature = int(m.group(1)) - 1
        if feature < 0:
            raise ModelFormatError(f"attribute index must start at 1: {line!r}")
        try:
            threshold = float(m.group(2))
        except ValueError:
            raise ModelFormatError(f"bad threshold: {line!r}") from None
        node = TreeNode(label=0)
        left = block(level + 1)
        if pos >= len(lines) or lines[pos] != pad + "else:":
            raise ModelFormatError(f"expected 'else:' after line {line!r}")
        pos += 1
        node.attach(Split(feature, threshold), left, block(level + 1))
        return node

    root = block(1)
    if pos != len(lines):
        raise ModelFormatError(f"trailing text: {lines[pos]!r}")
    return Tree(root)


MODEL_TAG = "# msitree-model"


def model_text(tree: Tree) -> str:
    """The tree text preceded by a comment carrying m and the label set."""
    data = tree.trained_on
    labels = ",".join(str(v) for v in np.unique(data.labels)) if data is not None else ""
    m = data.m if data is not None else max(tree.used_features(), default=-1) + 1
    return f"{MODEL_TAG} m={m} labels={labels}\n" + serialize(tree)


def dump_model(tree: Tree, path) -> None:
    Path(path).write_text(model_text(tree))


def load_model(path) -> tuple[Tree, int, list[int]]:
    """Read a model file; returns the tree, the attribute count and the label set."""
    text = Path(path).read_text()
    first, _, rest = text.partition("\n")
    m = re.fullmatch(re.escape(MODEL_TAG) + r" m=(\d+) labels=([\d,]*)", first.strip())
    if not m:
        raise ModelFormatError(f"{path}: missing '{MODEL_TAG}' header line")
    n_attrs = int(m.group(1))
    labels = [int(v) for v in m.group(2).split(",") if v]
    tree = parse_tree(rest)
    if tree.used_features() and tree.used_features()[-1] >= n_attrs:
        raise ModelFormatError(f"{path}: split attribute beyond declared m={n_attrs}")
    return tree, n_attrs, labels
