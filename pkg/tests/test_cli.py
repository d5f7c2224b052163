import json
from pathlib import Path

import pytest

from gaitid import cli
from gaitid.features import read_feature_csv


def _run(*argv):
    return cli.main(list(argv))


def _synth_featurize(tmp_path, users=3, windows=8, seed=1):
    data = tmp_path / "data"
    feats = tmp_path / "features.csv"
    assert _run("synth", "--users", str(users), "--seed", str(seed),
                "--out", str(data), "--windows-per-user", str(windows)) == 0
    assert _run("featurize", "--data", str(data), "--out", str(feats)) == 0
    return data, feats


def test_synth_writes_files_and_manifest(tmp_path, capsys):
    data, _ = _synth_featurize(tmp_path)
    manifest = json.loads((data / "manifest.json").read_text())
    assert len(manifest["users"]) == 3
    assert (data / "user00" / "walk_000.csv").exists()


def test_synth_is_byte_identical_on_rerun(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out in (a, b):
        assert _run("synth", "--users", "2", "--seed", "3", "--out", str(out),
                    "--windows-per-user", "4") == 0
    fa = (a / "user00" / "walk_000.csv").read_bytes()
    fb = (b / "user00" / "walk_000.csv").read_bytes()
    assert fa == fb


def test_synth_rejects_single_user(tmp_path, capsys):
    assert _run("synth", "--users", "1", "--out", str(tmp_path / "d")) == 2
    assert "error" in capsys.readouterr().err


def test_featurize_output(tmp_path, capsys):
    _, feats = _synth_featurize(tmp_path, users=2, windows=6)
    ds = read_feature_csv(feats)
    assert len(ds) == 12
    assert ds.class_count == 2
    assert feats.with_suffix(".labels.json").exists()
    out = capsys.readouterr().out
    assert "user 0: 6 windows" in out


def test_featurize_short_recording_warns(tmp_path, capsys):
    d = tmp_path / "data" / "solo"
    d.mkdir(parents=True)
    (d / "short.csv").write_text("1,2,3\n4,5,6\n")
    (d / "long.csv").write_text("\n".join("0.5,1.5,2.5" for _ in range(120)) + "\n")
    assert _run("featurize", "--data", str(tmp_path / "data"),
                "--out", str(tmp_path / "f.csv")) == 0
    assert "warning" in capsys.readouterr().err


def test_featurize_plot_series(tmp_path):
    data, _ = _synth_featurize(tmp_path, users=2, windows=5)
    plot = tmp_path / "mag.csv"
    assert _run("featurize", "--data", str(data), "--out", str(tmp_path / "f.csv"),
                "--plot-feature", "time_magnitude", "--plot-users", "0,1",
                "--plot-out", str(plot)) == 0
    lines = plot.read_text().splitlines()
    assert lines[0] == "window,user_0,user_1"
    assert len(lines) == 6


def test_evaluate_writes_report_and_tables(tmp_path, capsys):
    _, feats = _synth_featurize(tmp_path, users=3, windows=10)
    report = tmp_path / "report.json"
    assert _run("evaluate", "--features", str(feats), "--trees", "8",
                "--folds", "3", "--seed", "2", "--out", str(report)) == 0
    out = capsys.readouterr().out
    assert "accuracy" in out and "person-wise" in out
    doc = json.loads(report.read_text())
    assert doc["schema_version"] == 1
    assert doc["model"] == "rf"
    assert 0.0 <= doc["headline"]["accuracy"] <= 1.0


def test_evaluate_dt_baseline(tmp_path):
    _, feats = _synth_featurize(tmp_path, users=2, windows=8)
    report = tmp_path / "dt.json"
    assert _run("evaluate", "--features", str(feats), "--model", "dt",
                "--folds", "2", "--out", str(report)) == 0
    doc = json.loads(report.read_text())
    assert doc["params"]["tree_count"] == 1
    assert doc["params"]["feature_subset_size"] is None
    assert doc["params"]["bootstrap"] is False


def test_evaluate_stratification_error_names_class(tmp_path, capsys):
    _, feats = _synth_featurize(tmp_path, users=2, windows=5)
    assert _run("evaluate", "--features", str(feats), "--folds", "10") == 2
    assert "class" in capsys.readouterr().err


def test_evaluate_schema_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,label\n1,2,0\n")
    assert _run("evaluate", "--features", str(bad)) == 2
    assert "missing columns" in capsys.readouterr().err


def test_evaluate_deterministic_across_threads(tmp_path):
    _, feats = _synth_featurize(tmp_path, users=3, windows=10)
    docs = []
    for threads, name in ((1, "r1.json"), (4, "r4.json")):
        path = tmp_path / name
        assert _run("evaluate", "--features", str(feats), "--trees", "8",
                    "--folds", "3", "--seed", "1", "--threads", str(threads),
                    "--out", str(path)) == 0
        doc = json.loads(path.read_text())
        doc.pop("metadata")
        docs.append(doc)
    assert docs[0] == docs[1]


def test_bench_sweep(tmp_path, capsys):
    _, feats = _synth_featurize(tmp_path, users=2, windows=8)
    out = tmp_path / "bench.csv"
    assert _run("bench", "--features", str(feats), "--trees", "1,2,4",
                "--folds", "2", "--repeats", "1", "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "trees,train_time_s,accuracy,weighted_auc"
    assert len(lines) == 4


def test_bench_skip_cv(tmp_path):
    _, feats = _synth_featurize(tmp_path, users=2, windows=6)
    out = tmp_path / "bench.csv"
    assert _run("bench", "--features", str(feats), "--trees", "1,2",
                "--repeats", "1", "--skip-cv", "--out", str(out)) == 0
    rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
    assert all(r[2] == "" and r[3] == "" for r in rows)


def test_report_renders_saved_report(tmp_path, capsys):
    _, feats = _synth_featurize(tmp_path, users=2, windows=8)
    path = tmp_path / "report.json"
    assert _run("evaluate", "--features", str(feats), "--trees", "4",
                "--folds", "2", "--out", str(path)) == 0
    capsys.readouterr()
    assert _run("report", "--report", str(path)) == 0
    assert "person-wise" in capsys.readouterr().out
