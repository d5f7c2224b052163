"""Command-line pipeline: synth -> featurize -> evaluate / bench / report.

All randomness flows from the ``--seed`` flags; reruns with identical flags
produce identical output files (wall-clock timings are confined to each
report's ``metadata`` field).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import evaluation, features, forest, ingest, synthgen
from .signal_model import Dataset

REPORT_SCHEMA_VERSION = 1
DEFAULT_BENCH_TREES = "1,2,4,8,16,32,64,128"


class CliError(Exception):
    pass


def _write_recording_csv(rec, path: Path) -> None:
    lines = ["x,y,z"]
    for x, y, z in rec.xyz:
        lines.append(f"{float(x)!r},{float(y)!r},{float(z)!r}")
    path.write_text("\n".join(lines) + "\n")


def cmd_synth(args) -> int:
    if args.users < 2:
        raise CliError("need at least 2 users (single-class data cannot be classified)")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    duration = args.duration
    if duration is None:
        duration = synthgen.recording_duration_for_windows(
            args.windows_per_user, args.width, args.overlap, args.rate)
    manifest = {
        "seed": args.seed,
        "rate_hz": args.rate,
        "noise_sigma": args.noise,
        "duration_s": duration,
        "users": [],
    }
    for user_id in range(args.users):
        label = f"user{user_id:02d}"
        profile = synthgen.generate_profile(user_id, args.seed, args.noise)
        rec = synthgen.generate_recording(profile, duration, args.rate, args.seed)
        user_dir = out / label
        user_dir.mkdir(exist_ok=True)
        _write_recording_csv(rec, user_dir / "walk_000.csv")
        manifest["users"].append({
            "label": label,
            "user_id": user_id,
            "step_freq_hz": profile.step_freq,
            "samples": len(rec),
        })
        print(f"{label}: {len(rec)} samples at {args.rate:g} Hz")
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_featurize(args) -> int:
    recordings, label_map = ingest.load_directory(args.data, args.rate)
    per_user = {}
    rows = []
    for rec in recordings:
        windows = ingest.segment_windows(rec, args.width, args.overlap)
        if not windows:
            print(f"warning: recording for user {rec.user_id} shorter than "
                  f"{args.width} samples, 0 windows", file=sys.stderr)
        per_user.setdefault(rec.user_id, []).extend(windows)
    for user_id in sorted(per_user):
        wins = per_user[user_id]
        rows.extend(features.extract_feature_vector(w) for w in wins)
        print(f"user {user_id}: {len(wins)} windows")
    if not rows:
        raise CliError("no windows produced; recordings too short?")
    dataset = Dataset.from_rows(rows, len(label_map))
    features.write_feature_csv(dataset, args.out)
    sidecar = Path(args.out).with_suffix(".labels.json")
    sidecar.write_text(json.dumps(label_map, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(dataset)} rows to {args.out}")

    if args.plot_feature:
        if args.plot_feature not in features.FEATURE_NAMES:
            raise CliError(f"unknown feature {args.plot_feature!r}")
        col = features.FEATURE_NAMES.index(args.plot_feature)
        users = [int(u) for u in args.plot_users.split(",")]
        out = Path(args.plot_out or f"{args.plot_feature}_series.csv")
        with open(out, "w") as fh:
            fh.write("window," + ",".join(f"user_{u}" for u in users) + "\n")
            series = {u: [float(fv.values[col]) for fv in rows if fv.label == u]
                      for u in users}
            for i in range(max(len(s) for s in series.values())):
                cells = [repr(series[u][i]) if i < len(series[u]) else "" for u in users]
                fh.write(f"{i}," + ",".join(cells) + "\n")
        print(f"wrote per-window {args.plot_feature} series to {out}")
    return 0


def _forest_params(args) -> forest.ForestParams:
    if args.model == "dt":
        # Decision-tree baseline: one unrestricted tree on the full data.
        return forest.ForestParams(tree_count=1, feature_subset_size=None,
                                   bootstrap=False, master_seed=args.seed,
                                   max_depth=args.max_depth)
    return forest.ForestParams(tree_count=args.trees,
                               feature_subset_size=args.ktry,
                               max_depth=args.max_depth,
                               master_seed=args.seed)


def _print_tables(doc: dict) -> None:
    head = doc["headline"]
    print("model performance (headline = mean over folds)")
    print(f"{'model':<8}{'accuracy':>10}{'auc':>10}{'recall':>10}")
    print(f"{doc['model']:<8}{head['accuracy']:>10.4f}"
          f"{head['weighted_auc']:>10.4f}{head['weighted_recall']:>10.4f}")
    print()
    print("person-wise accuracy (1-vs-others) and recall")
    print(f"{'person':<8}{'accuracy':>10}{'recall':>10}")
    per = doc["report"]["per_class"]
    for c, (acc, rec) in enumerate(zip(per["accuracy"], per["recall"])):
        print(f"{c:<8}{acc:>10.4f}{rec:>10.4f}")


def _evaluate(args):
    dataset = features.read_feature_csv(args.features)
    params = _forest_params(args)
    t0 = time.perf_counter()
    report = evaluation.cross_validate(dataset, params, k=args.folds,
                                       seed=args.seed, n_threads=args.threads)
    elapsed = time.perf_counter() - t0
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "model": args.model,
        "params": {
            "tree_count": params.tree_count,
            "feature_subset_size": params.feature_subset_size,
            "max_depth": params.max_depth,
            "bootstrap": params.bootstrap,
            "master_seed": params.master_seed,
            "folds": args.folds,
        },
        "headline": report.headline,
        "report": report.to_dict(),
        "metadata": {"elapsed_s": elapsed},
    }
    return doc


def cmd_evaluate(args) -> int:
    doc = _evaluate(args)
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        _print_tables(doc)
    return 0


def cmd_bench(args) -> int:
    dataset = features.read_feature_csv(args.features)
    tree_counts = [int(t) for t in args.trees.split(",")]
    lines = ["trees,train_time_s,accuracy,weighted_auc"]
    for t in tree_counts:
        params = forest.ForestParams(tree_count=t, feature_subset_size=args.ktry,
                                     master_seed=args.seed)
        times = []
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            forest.train_forest(dataset, params, n_threads=args.threads)
            times.append(time.perf_counter() - t0)
        train_time = float(np.median(times))
        if args.skip_cv:
            acc = auc = ""
        else:
            report = evaluation.cross_validate(dataset, params, k=args.folds,
                                               seed=args.seed, n_threads=args.threads)
            acc = f"{report.headline['accuracy']!r}"
            auc = f"{report.headline['weighted_auc']!r}"
        lines.append(f"{t},{train_time!r},{acc},{auc}")
        print(f"t={t}: train {train_time:.3f}s"
              + (f", accuracy {acc}, auc {auc}" if not args.skip_cv else ""))
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote sweep to {args.out}")
    return 0


def cmd_report(args) -> int:
    doc = json.loads(Path(args.report).read_text())
    if doc.get("schema_version") != REPORT_SCHEMA_VERSION:
        raise CliError(f"unsupported report schema: {doc.get('schema_version')!r}")
    _print_tables(doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaitid",
                                     description="Gait-based person recognition pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate synthetic walking recordings")
    p.add_argument("--users", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--duration", type=float, default=None,
                   help="seconds per recording (default sized for --windows-per-user)")
    p.add_argument("--windows-per-user", type=int, default=360)
    p.add_argument("--rate", type=float, default=50.0)
    p.add_argument("--noise", type=float, default=synthgen.DEFAULT_NOISE_SIGMA)
    p.add_argument("--width", type=int, default=100)
    p.add_argument("--overlap", type=float, default=0.5)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("featurize", help="extract feature vectors from recordings")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rate", type=float, default=50.0)
    p.add_argument("--width", type=int, default=100)
    p.add_argument("--overlap", type=float, default=0.5)
    p.add_argument("--plot-feature", default=None,
                   help="also emit this feature's per-window series")
    p.add_argument("--plot-users", default="0,1")
    p.add_argument("--plot-out", default=None)
    p.set_defaults(func=cmd_featurize)

    p = sub.add_parser("evaluate", help="cross-validated evaluation")
    p.add_argument("--features", required=True)
    p.add_argument("--model", choices=("rf", "dt"), default="rf")
    p.add_argument("--trees", type=int, default=forest.DEFAULT_TREE_COUNT)
    p.add_argument("--ktry", type=int, default=forest.DEFAULT_K_TRY)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="write report JSON here")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="trees-vs-performance sweep")
    p.add_argument("--features", required=True)
    p.add_argument("--trees", default=DEFAULT_BENCH_TREES,
                   help="comma-separated tree counts")
    p.add_argument("--ktry", type=int, default=forest.DEFAULT_K_TRY)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--skip-cv", action="store_true",
                   help="measure train time only")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="render a saved report JSON")
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
