"""Combiner and compressor ablations on the blob sweep datasets."""

import argparse

from msitree import bench
from msitree.bench import BlobSweepConfig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--out", default="results")
    args = parser.parse_args()
    cfg = BlobSweepConfig(trials_per_std=args.trials)
    for report in (bench.run_combiner_ablation(cfg), bench.run_compressor_ablation(cfg)):
        report.write(args.out)
        print(f"[{report.study}]")
        for row in report.aggregates:
            print(f"{row['algorithm']:>10}  acc={row['mean_accuracy']:.4f}  nodes={row['mean_nodes']:.2f}")


if __name__ == "__main__":
    main()
