"""Command-line front end: ``msitree train|predict|eval|bench``.

Exit status is 0 on success, 2 for usage errors and 1 for runtime failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import bench
from .baseline import GreedyConfig, build_greedy_tree
from .complexity import CombinerKind, CompressorKind
from .data import DatasetError, SplitRatio, load_csv, load_features
from .msi import MsiConfig, build_tree
from .tree import (ModelFormatError, accuracy, dump_model, load_model, max_depth, model_text, node_count,
                   predict_many)

STUDIES = ("error-point", "blobs", "combiners", "compressors", "csv")


class RuntimeFailure(Exception):
    pass


def _label_arg(value: str):
    return int(value) if value.lstrip("-").isdigit() else value


def _add_data_args(p: argparse.ArgumentParser, label_required: bool = True) -> None:
    p.add_argument("--data", required=True, help="CSV file")
    p.add_argument("--label", type=_label_arg, default=-1 if label_required else None,
                   help="label column name or index (default: last column)")
    p.add_argument("--no-header", action="store_true", help="CSV has no header row")


def _add_msi_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--compressor", choices=[c.value for c in CompressorKind], default=None)
    p.add_argument("--combiner", choices=[c.value for c in CombinerKind], default=None)


def _add_greedy_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--min-samples-split", type=int, default=None)
    p.add_argument("--min-samples-leaf", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=None)


def _msi_config(args) -> MsiConfig:
    return MsiConfig(args.compressor or CompressorKind.BZ2, args.combiner or CombinerKind.HARMONIC)


def _greedy_config(args, **defaults) -> GreedyConfig:
    values = {"min_samples_split": args.min_samples_split, "min_samples_leaf": args.min_samples_leaf,
              "max_depth": args.max_depth}
    values = {k: v for k, v in values.items() if v is not None}
    try:
        return GreedyConfig(**{**defaults, **values})
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _greedy_flags_given(args) -> list[str]:
    names = ("min_samples_split", "min_samples_leaf", "max_depth")
    return ["--" + n.replace("_", "-") for n in names if getattr(args, n) is not None]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msitree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="fit a tree and write its text form")
    _add_data_args(p)
    p.add_argument("--algo", choices=("msi", "greedy"), default="msi")
    _add_msi_args(p)
    _add_greedy_args(p)
    p.add_argument("--out", help="model file (default: stdout)")
    p.add_argument("--trace", help="write MSI growth steps as JSON lines")

    p = sub.add_parser("predict", help="predict labels for the rows of a CSV")
    p.add_argument("--model", required=True)
    _add_data_args(p, label_required=False)
    p.add_argument("--out", help="output CSV (default: stdout)")

    p = sub.add_parser("eval", help="accuracy and confusion counts of a model on labelled data")
    p.add_argument("--model", required=True)
    _add_data_args(p)

    p = sub.add_parser("bench", help="run one of the experiment studies")
    p.add_argument("--study", required=True, choices=STUDIES)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seeds", type=int, default=20, help="error-point: number of seeds (0..N-1)")
    defaults = bench.BlobSweepConfig()
    p.add_argument("--std-start", type=float, default=defaults.std_start)
    p.add_argument("--std-end", type=float, default=defaults.std_end)
    p.add_argument("--std-step", type=float, default=defaults.std_step)
    p.add_argument("--trials", type=int, default=defaults.trials_per_std)
    p.add_argument("--points-per-blob", type=int, default=defaults.points_per_blob)
    p.add_argument("--seed", type=int, default=0, help="base seed")
    p.add_argument("--data", help="csv: input file")
    p.add_argument("--label", type=_label_arg, default=-1)
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--repetitions", type=int, default=100)
    p.add_argument("--train-fraction", type=float, default=0.7)
    _add_msi_args(p)
    _add_greedy_args(p)
    return parser


def _stats_line(**pairs) -> str:
    return " ".join(f"{k}={v}" for k, v in pairs.items())


def _write_text(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_train(args, parser) -> None:
    if args.algo == "msi" and _greedy_flags_given(args):
        parser.error(f"{', '.join(_greedy_flags_given(args))} not accepted with --algo msi "
                     "(MSI has no hyperparameters)")
    if args.algo == "greedy" and (args.compressor or args.combiner):
        parser.error("--compressor/--combiner only apply to --algo msi")
    if args.algo == "greedy" and args.trace:
        parser.error("--trace only applies to --algo msi")
    try:
        greedy_cfg = _greedy_config(args) if args.algo == "greedy" else None
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    data = load_csv(args.data, args.label, not args.no_header)
    if args.algo == "msi":
        tree, trace = build_tree(data, _msi_config(args))
        if args.trace:
            with open(args.trace, "w") as fh:
                for step in trace:
                    fh.write(json.dumps(asdict(step), default=str) + "\n")
    else:
        tree = build_greedy_tree(data, greedy_cfg)
    if args.out:
        dump_model(tree, args.out)
    else:
        sys.stdout.write(model_text(tree))
    print(_stats_line(algo=args.algo, nodes=node_count(tree), depth=max_depth(tree),
                      train_accuracy=repr(accuracy(tree, data))),
          file=sys.stderr if not args.out else sys.stdout)


def _model_features(args, n_attrs: int) -> np.ndarray:
    if args.label is not None:
        X = load_features(args.data, not args.no_header, drop_column=args.label)
    else:
        X = load_features(args.data, not args.no_header)
        if X.shape[1] == n_attrs + 1:
            X = X[:, :-1]
    if X.shape[1] != n_attrs:
        raise RuntimeFailure(f"model expects {n_attrs} attributes, data has {X.shape[1]}")
    return X


def cmd_predict(args, parser) -> None:
    tree, n_attrs, _ = load_model(args.model)
    X = _model_features(args, n_attrs)
    pred = predict_many(tree, X)
    _write_text("prediction\n" + "".join(f"{int(v)}\n" for v in pred), args.out)


def cmd_eval(args, parser) -> None:
    tree, n_attrs, labels = load_model(args.model)
    data = load_csv(args.data, args.label, not args.no_header)
    if data.m != n_attrs:
        raise RuntimeFailure(f"model expects {n_attrs} attributes, data has {data.m}")
    pred = predict_many(tree, data.features)
    print(_stats_line(accuracy=repr(float(np.mean(pred == data.labels))), n=data.n))
    classes = sorted(set(labels) | set(data.labels.tolist()) | set(pred.tolist()))
    for t in classes:
        for p in classes:
            count = int(np.sum((data.labels == t) & (pred == p)))
            print(_stats_line(true=t, pred=p, count=count))


def cmd_bench(args, parser) -> None:
    msi_cfg = _msi_config(args)
    try:
        sweep = bench.BlobSweepConfig(args.std_start, args.std_end, args.std_step, args.trials,
                                      args.points_per_blob, args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    if args.study == "error-point":
        report = bench.run_error_point_study(list(range(args.seed, args.seed + args.seeds)), msi_cfg,
                                             _greedy_config(args))
    elif args.study == "blobs":
        greedy = _greedy_config(args, min_samples_split=2) if _greedy_flags_given(args) else None
        report = bench.run_blob_sweep(sweep, msi_cfg, greedy)
    elif args.study == "combiners":
        report = bench.run_combiner_ablation(sweep, msi_cfg)
    elif args.study == "compressors":
        report = bench.run_compressor_ablation(sweep, msi_cfg)
    else:
        if not args.data:
            parser.error("--study csv needs --data")
        try:
            ratio = SplitRatio(args.train_fraction, args.seed)
        except ValueError as exc:
            parser.error(str(exc))
        report = bench.run_csv_study(args.data, args.label, args.repetitions, ratio, msi_cfg,
                                     _greedy_config(args), not args.no_header)
    for path in report.write(args.out):
        print(path)


COMMANDS = {"train": cmd_train, "predict": cmd_predict, "eval": cmd_eval, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.command](args, parser)
    except (DatasetError, ModelFormatError, RuntimeFailure, OSError, ValueError) as exc:
        print(f"msitree: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
