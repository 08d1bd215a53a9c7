"""Experiment runners: error-point robustness, blob sweep, combiner and
compressor ablations, and repeated train/test runs on a user CSV.

Every study returns an :class:`ExperimentReport` holding one raw row per
(trial, algorithm) and aggregate rows derived from them. Runs are fully
determined by their configuration and seeds.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .baseline import GreedyConfig, build_greedy_tree
from .complexity import CombinerKind, CompressorKind
from .data import Dataset, SplitRatio, load_csv, make_blobs, make_error_point_dataset, train_test_split
from .msi import MsiConfig, build_tree
from .tree import Tree, accuracy, max_depth, node_count

# min_samples_leaf values tried when tuning the greedy baseline on blobs
LEAF_GRID = (1, 5, 10, 20, 26, 30)

AGGREGATE_FIELDS = ("algorithm", "param", "trials", "mean_accuracy", "mean_nodes", "std_nodes", "mean_depth")


@dataclass(frozen=True)
class BlobSweepConfig:
    std_start: float = 2.5
    std_end: float = 4.5
    std_step: float = 0.25
    trials_per_std: int = 20
    points_per_blob: int = 50
    base_seed: int = 0

    def __post_init__(self):
        if not self.std_start < self.std_end:
            raise ValueError("std_start must be below std_end")
        if not self.std_step > 0:
            raise ValueError("std_step must be positive")
        if self.trials_per_std < 1:
            raise ValueError("trials_per_std must be at least 1")
        if self.points_per_blob < 1:
            raise ValueError("points_per_blob must be at least 1")

    def std_values(self) -> list[float]:
        steps = int(math.floor((self.std_end - self.std_start) / self.std_step + 1e-9))
        return [round(self.std_start + k * self.std_step, 10) for k in range(steps + 1)]


@dataclass
class ExperimentReport:
    study: str
    raw: list[dict] = field(default_factory=list)
    aggregates: list[dict] = field(default_factory=list)
    manifest: dict = field(default_factory=dict)

    def rows(self, algorithm: str | None = None, param=None) -> list[dict]:
        return [r for r in self.aggregates
                if (algorithm is None or r["algorithm"] == algorithm)
                and (param is None or r["param"] == param)]

    def overall(self, algorithm: str) -> dict:
        """The aggregate row over every trial of ``algorithm``."""
        return self.rows(algorithm, "all")[0]

    def write(self, out_dir) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / f"{self.study}_raw.csv", out / f"{self.study}_aggregate.csv",
                 out / f"{self.study}_manifest.txt"]
        _write_rows(paths[0], self.raw)
        _write_rows(paths[1], self.aggregates)
        paths[2].write_text(json.dumps(self.manifest, indent=2, sort_keys=True, default=str) + "\n")
        return paths


def _write_rows(path: Path, rows: list[dict]) -> None:
    fields = list(rows[0]) if rows else []
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return value


def aggregate(raw: Iterable[dict], by: str = "param") -> list[dict]:
    """Per (algorithm, ``by``) means plus one ``param == "all"`` row per algorithm.

    ``std_nodes`` is the population standard deviation.
    """
    groups: dict[tuple, list[dict]] = {}
    for row in raw:
        keys = [(row["algorithm"], row[by])]
        if row[by] != "all":
            keys.append((row["algorithm"], "all"))
        for key in keys:
            groups.setdefault(key, []).append(row)
    out = []
    for (algorithm, param), rows in groups.items():
        nodes = np.array([r["nodes"] for r in rows], dtype=float)
        out.append({
            "algorithm": algorithm,
            "param": param,
            "trials": len(rows),
            "mean_accuracy": float(np.mean([r["accuracy"] for r in rows])),
            "mean_nodes": float(nodes.mean()),
            "std_nodes": float(nodes.std()),
            "mean_depth": float(np.mean([r["depth"] for r in rows])),
        })
    return out


def _trial_seed(*key: int) -> int:
    return int(np.random.SeedSequence(list(key)).generate_state(1)[0])


def _measure(tree: Tree, test: Dataset) -> dict:
    return {"accuracy": accuracy(tree, test), "nodes": node_count(tree), "depth": max_depth(tree)}


def _blob_pairs(cfg: BlobSweepConfig):
    """Fresh (train, test) blob datasets for every std value and trial."""
    for k, std in enumerate(cfg.std_values()):
        for trial in range(cfg.trials_per_std):
            train = make_blobs(std, cfg.points_per_blob, _trial_seed(cfg.base_seed, k, trial, 0))
            test = make_blobs(std, cfg.points_per_blob, _trial_seed(cfg.base_seed, k, trial, 1))
            yield std, trial, train, test


def _config_echo(**configs) -> dict:
    return {name: (asdict(c) if c is not None else None) for name, c in configs.items()}


def run_error_point_study(seeds: Sequence[int], cfg_msi: MsiConfig = MsiConfig(),
                          cfg_greedy: GreedyConfig = GreedyConfig()) -> ExperimentReport:
    """Train both algorithms on the error-point dataset of every seed;
    accuracy is measured on the training data itself."""
    if not seeds:
        raise ValueError("need at least one seed")
    raw = []
    for seed in seeds:
        data = make_error_point_dataset(seed)
        msi_tree, _ = build_tree(data, cfg_msi)
        greedy_tree = build_greedy_tree(data, cfg_greedy)
        for name, tree in (("msi", msi_tree), ("greedy", greedy_tree)):
            root = tree.root
            raw.append({
                "algorithm": name, "param": seed, "trial": 0, "seed": seed,
                **_measure(tree, data),
                "root_feature": "" if root.is_leaf else root.split.feature + 1,
                "root_threshold": "" if root.is_leaf else root.split.threshold,
            })
    manifest = {"study": "error-point", "seeds": list(seeds),
                **_config_echo(msi=cfg_msi, greedy=cfg_greedy)}
    return ExperimentReport("error-point", raw, aggregate(raw), manifest)


def tune_leaf_size(pairs, grid: Sequence[int] = LEAF_GRID,
                   min_samples_split: int = 2) -> tuple[GreedyConfig, dict[int, float]]:
    """Pick the ``min_samples_leaf`` with the best mean test accuracy over ``pairs``
    (smallest value on ties)."""
    scores = {}
    for leaf in grid:
        cfg = GreedyConfig(min_samples_split=min_samples_split, min_samples_leaf=leaf)
        scores[leaf] = float(np.mean([accuracy(build_greedy_tree(tr, cfg), te) for tr, te in pairs]))
    best = max(grid, key=lambda leaf: (scores[leaf], -leaf))
    return GreedyConfig(min_samples_split=min_samples_split, min_samples_leaf=best), scores


def run_blob_sweep(cfg: BlobSweepConfig = BlobSweepConfig(), cfg_msi: MsiConfig = MsiConfig(),
                   cfg_greedy: GreedyConfig | None = None) -> ExperimentReport:
    """MSI against the greedy baseline on overlapping Gaussian blobs.

    With ``cfg_greedy=None`` the baseline's ``min_samples_leaf`` is tuned over
    :data:`LEAF_GRID` for maximum mean test accuracy across the whole sweep.
    """
    trials = list(_blob_pairs(cfg))
    tuning = None
    if cfg_greedy is None:
        cfg_greedy, tuning = tune_leaf_size([(tr, te) for _, _, tr, te in trials])
    raw = []
    for std, trial, train, test in trials:
        msi_tree, _ = build_tree(train, cfg_msi)
        greedy_tree = build_greedy_tree(train, cfg_greedy)
        for name, tree in (("msi", msi_tree), ("greedy", greedy_tree)):
            raw.append({"algorithm": name, "param": std, "trial": trial, **_measure(tree, test)})
    manifest = {"study": "blobs", "sweep": asdict(cfg), "leaf_tuning": tuning,
                **_config_echo(msi=cfg_msi, greedy=cfg_greedy)}
    return ExperimentReport("blobs", raw, aggregate(raw), manifest)


def _ablation(study: str, cfg: BlobSweepConfig, variants: dict[str, MsiConfig]) -> ExperimentReport:
    raw = []
    for std, trial, train, test in _blob_pairs(cfg):
        for name, msi_cfg in variants.items():
            tree, _ = build_tree(train, msi_cfg)
            raw.append({"algorithm": name, "param": std, "trial": trial, **_measure(tree, test)})
    overall = [row for row in aggregate(raw) if row["param"] == "all"]
    centre = float(np.mean([row["mean_accuracy"] for row in overall]))
    for row in overall:
        row["centered_accuracy"] = row["mean_accuracy"] - centre
    manifest = {"study": study, "sweep": asdict(cfg),
                "variants": {k: asdict(v) for k, v in variants.items()}}
    return ExperimentReport(study, raw, overall, manifest)


def run_combiner_ablation(cfg: BlobSweepConfig = BlobSweepConfig(),
                          base: MsiConfig = MsiConfig()) -> ExperimentReport:
    """MSI under each cost combiner on identical datasets; one aggregate row per
    combiner, with the cross-combiner mean accuracy subtracted in ``centered_accuracy``."""
    variants = {c.value: replace(base, combiner=c) for c in CombinerKind}
    return _ablation("combiners", cfg, variants)


def run_compressor_ablation(cfg: BlobSweepConfig = BlobSweepConfig(),
                            base: MsiConfig = MsiConfig()) -> ExperimentReport:
    variants = {c.value: replace(base, compressor=c) for c in CompressorKind}
    return _ablation("compressors", cfg, variants)


def run_csv_study(path, label_column=-1, repetitions: int = 100, ratio: SplitRatio = SplitRatio(),
                  cfg_msi: MsiConfig = MsiConfig(), cfg_greedy: GreedyConfig = GreedyConfig(),
                  has_header: bool = True) -> ExperimentReport:
    """Repeated random train/test splits of a CSV; repetition ``r`` shuffles
    with seed ``ratio.seed + r``."""
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    data = load_csv(path, label_column, has_header)
    raw = []
    for rep in range(repetitions):
        train, test = train_test_split(data, replace(ratio, seed=ratio.seed + rep))
        msi_tree, _ = build_tree(train, cfg_msi)
        greedy_tree = build_greedy_tree(train, cfg_greedy)
        for name, tree in (("msi", msi_tree), ("greedy", greedy_tree)):
            raw.append({"algorithm": name, "param": "all", "trial": rep, **_measure(tree, test)})
    manifest = {"study": "csv", "path": str(path), "label_column": label_column,
                "repetitions": repetitions, "ratio": asdict(ratio),
                **_config_echo(msi=cfg_msi, greedy=cfg_greedy)}
    return ExperimentReport("csv", raw, aggregate(raw), manifest)
