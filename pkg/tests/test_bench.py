import statistics

import pytest

from msitree import bench
from msitree.bench import BlobSweepConfig
from msitree.baseline import GreedyConfig
from msitree.data import make_blobs, save_csv

SMALL = BlobSweepConfig(std_start=2.5, std_end=3.5, std_step=0.5, trials_per_std=2, points_per_blob=15,
                        base_seed=3)


def recompute(raw, algorithm, param):
    rows = [r for r in raw if r["algorithm"] == algorithm and (param == "all" or r["param"] == param)]
    nodes = [r["nodes"] for r in rows]
    return {
        "trials": len(rows),
        "mean_accuracy": statistics.fmean(r["accuracy"] for r in rows),
        "mean_nodes": statistics.fmean(nodes),
        "std_nodes": statistics.pstdev(nodes),
        "mean_depth": statistics.fmean(r["depth"] for r in rows),
    }


def assert_aggregates_match(report):
    for row in report.aggregates:
        expected = recompute(report.raw, row["algorithm"], row["param"])
        assert row["trials"] == expected["trials"]
        for key in ("mean_accuracy", "mean_nodes", "std_nodes", "mean_depth"):
            assert row[key] == pytest.approx(expected[key], abs=1e-12)


def test_std_values():
    assert BlobSweepConfig().std_values() == [2.5, 2.75, 3.0, 3.25, 3.5, 3.75, 4.0, 4.25, 4.5]
    assert len(BlobSweepConfig(std_step=0.01, trials_per_std=100).std_values()) == 201
    with pytest.raises(ValueError):
        BlobSweepConfig(std_start=5.0)
    with pytest.raises(ValueError):
        BlobSweepConfig(std_step=0.0)


def test_error_point_study():
    report = bench.run_error_point_study([0, 1, 2])
    assert len(report.raw) == 6
    assert report.overall("msi")["mean_nodes"] == 3
    assert report.overall("greedy")["mean_nodes"] > 3
    assert all(r["root_feature"] == 1 for r in report.raw if r["algorithm"] == "msi")
    assert_aggregates_match(report)
    with pytest.raises(ValueError):
        bench.run_error_point_study([])


def test_blob_sweep_tunes_baseline_and_aggregates():
    report = bench.run_blob_sweep(SMALL)
    assert set(report.manifest["leaf_tuning"]) == set(bench.LEAF_GRID)
    assert len(report.raw) == 3 * 2 * 2
    assert {r["param"] for r in report.aggregates} == {2.5, 3.0, 3.5, "all"}
    assert_aggregates_match(report)
    fixed = bench.run_blob_sweep(SMALL, cfg_greedy=GreedyConfig(min_samples_leaf=5))
    assert fixed.manifest["leaf_tuning"] is None
    assert fixed.manifest["greedy"]["min_samples_leaf"] == 5


def test_tune_leaf_size_prefers_smallest_on_ties():
    d = make_blobs(0.01, 10, seed=0)
    cfg, scores = bench.tune_leaf_size([(d, d)], grid=(3, 1, 2))
    assert set(scores.values()) == {1.0}
    assert cfg.min_samples_leaf == 1


def test_combiner_ablation_is_paired_and_centred():
    report = bench.run_combiner_ablation(SMALL)
    assert [r["algorithm"] for r in report.aggregates] == [
        "harmonic", "arithmetic", "geometric", "euclidean", "sum", "product"]
    assert sum(r["centered_accuracy"] for r in report.aggregates) == pytest.approx(0, abs=1e-12)
    keys = {}
    for r in report.raw:
        keys.setdefault(r["algorithm"], []).append((r["param"], r["trial"]))
    assert len({tuple(v) for v in keys.values()}) == 1
    assert_aggregates_match(report)


def test_datasets_repeat_across_calls():
    a = [(s, t, tr.features.tobytes()) for s, t, tr, _ in bench._blob_pairs(SMALL)]
    b = [(s, t, tr.features.tobytes()) for s, t, tr, _ in bench._blob_pairs(SMALL)]
    assert a == b
    assert len({x[2] for x in a}) == len(a)


def test_compressor_ablation_rows():
    report = bench.run_compressor_ablation(SMALL)
    assert [r["algorithm"] for r in report.aggregates] == ["bz2", "zlib", "lzma"]
    assert_aggregates_match(report)


def test_csv_study(tmp_path):
    path = tmp_path / "blobs.csv"
    save_csv(make_blobs(3.0, 30, seed=9), path)
    report = bench.run_csv_study(path, "label", repetitions=1)
    assert len(report.aggregates) == 2
    assert all(r["trials"] == 1 for r in report.aggregates)
    report = bench.run_csv_study(path, "label", repetitions=4)
    assert_aggregates_match(report)
    with pytest.raises(ValueError):
        bench.run_csv_study(path, "label", repetitions=0)


def test_reports_are_byte_reproducible(tmp_path):
    paths_a = bench.run_blob_sweep(SMALL).write(tmp_path / "a")
    paths_b = bench.run_blob_sweep(SMALL).write(tmp_path / "b")
    assert [p.name for p in paths_a] == ["blobs_raw.csv", "blobs_aggregate.csv", "blobs_manifest.txt"]
    for pa, pb in zip(paths_a, paths_b):
        assert pa.read_bytes() == pb.read_bytes()
    header = paths_a[1].read_text().splitlines()[0].split(",")
    assert tuple(header) == bench.AGGREGATE_FIELDS
