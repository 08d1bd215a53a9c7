"""Repeated train/test splits on a CSV dataset.

With no --data, the breast cancer table bundled with scikit-learn is exported
to the output directory first (requires scikit-learn).
"""

import argparse
from pathlib import Path

from msitree import bench
from msitree.data import Dataset, save_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data")
    parser.add_argument("--label", default="label")
    parser.add_argument("--repetitions", type=int, default=30)
    parser.add_argument("--out", default="results")
    args = parser.parse_args()
    path = args.data
    if path is None:
        from sklearn.datasets import load_breast_cancer

        bc = load_breast_cancer()
        path = Path(args.out) / "breast_cancer.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        save_csv(Dataset(bc.data, bc.target), path)
    report = bench.run_csv_study(path, args.label, repetitions=args.repetitions)
    report.write(args.out)
    for name in ("msi", "greedy"):
        row = report.overall(name)
        print(f"{name:>8}  acc={row['mean_accuracy']:.4f}  nodes={row['mean_nodes']:.2f}")


if __name__ == "__main__":
    main()
