"""Compression-based tree cost: inaccuracy, surfeit and their combination."""

from __future__ import annotations

import bz2
import lzma
import math
import zlib
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .data import Dataset, DataSubset, format_real
from .tree import Tree, misclassified, serialize


# Lower bound on surfeit. With the harmonic (or geometric, product) combiner a
# surfeit of exactly 0 zeroes the cost of any incompressible tree, including
# the root, so nothing could ever lower it. Any value far below one byte of
# redundancy (1/|M|) leads to the same growth decisions.
SURFEIT_FLOOR = 1e-9


class CompressorKind(str, Enum):
    BZ2 = "bz2"
    ZLIB = "zlib"
    LZMA = "lzma"


class CombinerKind(str, Enum):
    HARMONIC = "harmonic"
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    EUCLIDEAN = "euclidean"
    SUM = "sum"
    PRODUCT = "product"


_COMPRESS = {
    CompressorKind.BZ2: lambda b: bz2.compress(b, compresslevel=9),
    CompressorKind.ZLIB: lambda b: zlib.compress(b, level=9),
    CompressorKind.LZMA: lambda b: lzma.compress(b, preset=9 | lzma.PRESET_EXTREME),
}


def compressed_length(kind: CompressorKind | str, data: bytes | str) -> int:
    """Byte length of ``data`` compressed at the backend's maximum level."""
    if isinstance(data, str):
        data = data.encode()
    return len(_COMPRESS[CompressorKind(kind)](data))


def rows_text(dataset: Dataset, indices=None) -> str:
    """One line per row: comma-separated features then the label."""
    feats = dataset.features if indices is None else dataset.features[indices]
    labels = dataset.labels if indices is None else dataset.labels[indices]
    return "".join(
        ",".join(map(format_real, x)) + f",{y}\n" for x, y in zip(feats.tolist(), labels.tolist())
    )


def dataset_text(data: Dataset | DataSubset) -> str:
    if isinstance(data, DataSubset):
        return rows_text(data.parent, data.indices)
    return rows_text(data)


# Datasets are immutable and hashed by identity, so this is safe.
@lru_cache(maxsize=64)
def _dataset_length(kind: CompressorKind, dataset: Dataset) -> int:
    return compressed_length(kind, dataset_text(dataset))


def inaccuracy(kind: CompressorKind | str, tree: Tree, dataset: Dataset) -> float:
    """|Comp(E)| / |Comp(X)| with E the rows ``tree`` gets wrong; 0 when E is empty."""
    kind = CompressorKind(kind)
    wrong = misclassified(tree, dataset)
    if len(wrong) == 0:
        return 0.0
    return compressed_length(kind, dataset_text(wrong)) / _dataset_length(kind, dataset)


def surfeit(kind: CompressorKind | str, tree: Tree) -> float:
    """Redundancy 1 - |Comp(M)| / |M| of the tree text, floored at :data:`SURFEIT_FLOOR`."""
    text = serialize(tree).encode()
    return max(SURFEIT_FLOOR, 1.0 - compressed_length(kind, text) / len(text))


def combine(kind: CombinerKind | str, i: float, s: float) -> float:
    kind = CombinerKind(kind)
    if kind is CombinerKind.HARMONIC:
        return 0.0 if i + s == 0 else 2.0 * i * s / (i + s)
    if kind is CombinerKind.ARITHMETIC:
        return (i + s) / 2.0
    if kind is CombinerKind.GEOMETRIC:
        return math.sqrt(i * s)
    if kind is CombinerKind.EUCLIDEAN:
        return math.hypot(i, s)
    if kind is CombinerKind.SUM:
        return i + s
    return i * s


@dataclass(frozen=True)
class CostBreakdown:
    inaccuracy: float
    surfeit: float
    combined: float
    combiner: CombinerKind


def tree_cost(compressor, combiner, tree: Tree, dataset: Dataset) -> CostBreakdown:
    i = inaccuracy(compressor, tree, dataset)
    s = surfeit(compressor, tree)
    return CostBreakdown(i, s, combine(combiner, i, s), CombinerKind(combiner))
