"""Command-line entry point: build, split, metrics, ztest, inspect.

Summaries go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 usage error, 2 parse/data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, replace

from . import __version__
from .dataset import (
    DatasetManifest,
    build_dataset,
    export_split,
    load_build_config,
    stratified_kfold,
)
from .errors import PacketVisionError
from .evalstats import aggregate_folds, confusion_from_predictions, metrics, read_predictions, ztest
from .pcap import open_pcap, read_packets

SEED_ENV_VAR = "PACKETVISION_SEED"


class UsageError(Exception):
    """Command-line misuse detected after argparse."""


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    summary: str
    machine_output: tuple[str, ...] = ()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packetvision",
        description="Build packet-image datasets, split them, and evaluate classifiers.",
    )
    parser.add_argument("--version", action="version", version=f"packetvision {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="render every configured pcap into a labeled PNG tree")
    p.add_argument("--config", required=True, help="TOML build config")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="parallel image workers (default: number of processors)")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("split", help="stratified k-fold split of a manifest")
    p.add_argument("--manifest", required=True, help="manifest.csv from build")
    p.add_argument("--k", type=int, required=True, help="number of folds (>= 2)")
    p.add_argument("--seed", type=int, required=True, help="shuffle seed")
    p.add_argument("--out", required=True, help="output directory for fold_<i>/ subdirs")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("metrics", help="confusion-matrix metrics over a predictions CSV")
    p.add_argument("--predictions", required=True, help="fold,sample_id,true_label,predicted_label CSV")
    p.add_argument("--per-fold", action="store_true", help="also print one line per fold")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("ztest", help="one-tailed two-sample Z-test over fold accuracies")
    p.add_argument("--a", required=True, help="text file, one percent accuracy per line")
    p.add_argument("--b", required=True, help="text file, one percent accuracy per line")
    p.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    p.set_defaults(func=_cmd_ztest)

    p = sub.add_parser("inspect", help="pcap stats: packet count and length histogram")
    p.add_argument("--pcap", required=True, help="capture file to inspect")
    p.set_defaults(func=_cmd_inspect)

    return parser


def _cmd_build(args) -> CommandOutcome:
    config = load_build_config(args.config)
    seed_note = ""
    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None:
        try:
            override = int(env_seed)
        except ValueError:
            raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {env_seed!r}")
        config = replace(config, global_seed=override)
        seed_note = f" (overridden by {SEED_ENV_VAR})"
    jobs = max(1, args.jobs)
    manifest = build_dataset(config, jobs=jobs)
    manifest_path = os.path.join(config.output_dir, "manifest.csv")
    lines = [
        f"wrote {len(manifest.entries)} images across {len(manifest.classes)} classes to {config.output_dir}"
    ]
    for label, count in manifest.class_counts().items():
        lines.append(f"  {label}: {count}")
    lines.append(f"seed: {config.global_seed}{seed_note}  lambda: {config.lam}")
    lines.append(f"manifest: {manifest_path}")
    return CommandOutcome(0, "\n".join(lines), (manifest_path,))


def _cmd_split(args) -> CommandOutcome:
    if args.k < 2:
        raise UsageError("k must be >= 2")
    manifest = DatasetManifest.from_csv(args.manifest)
    assignment = stratified_kfold(manifest, k=args.k, seed=args.seed)
    written = []
    lines = []
    for fold in range(args.k):
        fold_dir = os.path.join(args.out, f"fold_{fold}")
        train_path, test_path = export_split(manifest, assignment, fold, fold_dir)
        written += [str(train_path), str(test_path)]
        n_test = sum(1 for f in assignment.assignment.values() if f == fold)
        lines.append(
            f"fold {fold}: train={len(manifest.entries) - n_test} test={n_test} -> {fold_dir}"
        )
    return CommandOutcome(0, "\n".join(lines), tuple(written))


def _format_report(tag: str, report) -> str:
    return (
        f"{tag}: accuracy={report.accuracy:.2f} precision={report.precision:.2f} "
        f"recall={report.recall:.2f} f1={report.f1:.2f}"
    )


def _cmd_metrics(args) -> CommandOutcome:
    records = read_predictions(args.predictions)
    if not records:
        raise PacketVisionError(f"no prediction rows in {args.predictions}")
    classes = sorted({r.true_label for r in records} | {r.predicted_label for r in records})
    folds = sorted({r.fold for r in records})
    reports = []
    lines = []
    for fold in folds:
        fold_records = [r for r in records if r.fold == fold]
        report = metrics(confusion_from_predictions(fold_records, classes))
        reports.append(report)
        if args.per_fold:
            lines.append(_format_report(f"fold {fold}", report))
    overall = aggregate_folds(reports)
    lines.append(_format_report(f"overall ({len(folds)} folds)", overall))
    if overall.degenerate:
        lines.append(f"degenerate classes (zero denominators): {', '.join(overall.degenerate)}")
    return CommandOutcome(0, "\n".join(lines))


def _read_accuracies(path) -> list[float]:
    with open(path) as f:
        values = [line.strip() for line in f]
    try:
        return [float(v) for v in values if v]
    except ValueError as exc:
        raise PacketVisionError(f"non-numeric accuracy in {path}: {exc}") from exc


def _cmd_ztest(args) -> CommandOutcome:
    a = _read_accuracies(args.a)
    b = _read_accuracies(args.b)
    result = ztest(a, b, alpha=args.alpha)
    lines = [
        f"mean_a={result.mean_a:.2f} (n={len(a)})  mean_b={result.mean_b:.2f} (n={len(b)})",
        f"z_obs={result.z_obs:.4f}  z_crit={result.z_crit:.4f}  alpha={result.alpha}",
        f"decision: {result.decision}",
    ]
    return CommandOutcome(0, "\n".join(lines))


_HISTOGRAM_EDGES = [1, 64, 128, 256, 512, 1024, 1519]


def _cmd_inspect(args) -> CommandOutcome:
    info = open_pcap(args.pcap)
    buckets = {}
    for i, lo in enumerate(_HISTOGRAM_EDGES):
        hi = _HISTOGRAM_EDGES[i + 1] - 1 if i + 1 < len(_HISTOGRAM_EDGES) else None
        buckets[(lo, hi)] = 0
    for packet in read_packets(args.pcap):
        for (lo, hi), _ in buckets.items():
            if packet.captured_len >= lo and (hi is None or packet.captured_len <= hi):
                buckets[(lo, hi)] += 1
                break
    lines = [
        f"pcap: {args.pcap}",
        f"byte order: {info.byte_order}  version: {info.version_major}.{info.version_minor}  "
        f"snaplen: {info.snaplen}  link type: {info.link_type}",
        f"packets: {info.packet_count} ({info.skipped_empty} empty records skipped)",
        "length histogram (captured bytes):",
    ]
    for (lo, hi), count in buckets.items():
        label = f"{lo}-{hi}" if hi is not None else f"{lo}+"
        lines.append(f"  {label}: {count}")
    return CommandOutcome(0, "\n".join(lines))


def run(argv) -> CommandOutcome:
    """Execute one subcommand; prints the summary and returns the outcome."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        # argparse already printed usage/help
        code = 0 if exc.code in (0, None) else 1
        return CommandOutcome(code, "")
    try:
        outcome = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CommandOutcome(1, "")
    except (PacketVisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CommandOutcome(2, "")
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return CommandOutcome(3, "")
    if outcome.summary:
        print(outcome.summary)
    return outcome


def main() -> None:
    sys.exit(run(sys.argv[1:]).exit_code)


if __name__ == "__main__":
    main()
