"""Trainer CLI: train one fold, save the artifact, emit predictions."""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .config import ARCHITECTURES, MODES, TrainConfig
from .data import read_split_csv
from .errors import TrainerError
from .predict import predict_fold, write_predictions_csv
from .train import save_artifact, train_fold, write_epoch_logs


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvtrain",
        description="Train a CNN on one fold of a packetvision dataset and emit predictions.",
    )
    parser.add_argument("command", choices=["train"], help="subcommand")
    parser.add_argument("--arch", required=True, choices=ARCHITECTURES)
    parser.add_argument("--mode", required=True, choices=MODES)
    parser.add_argument("--split-dir", required=True,
                        help="directory holding train.csv and test.csv for one fold")
    parser.add_argument("--data-root", required=True,
                        help="dataset root the split's image_relpath values resolve against")
    parser.add_argument("--out", required=True, help="output directory for model.pt, epochs.csv, predictions.csv")
    parser.add_argument("--epochs", type=int, default=50)
    parser.add_argument("--lr", type=float, default=0.001)
    parser.add_argument("--momentum", type=float, default=0.9)
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--fold", type=int, default=None,
                        help="fold index for the predictions CSV (default: parsed from split-dir name)")
    parser.add_argument("--unfreeze-all", action="store_true",
                        help="fine-tune every layer instead of just the classifier head")
    parser.add_argument("--quiet", action="store_true", help="suppress per-epoch lines")
    return parser


def _infer_fold(split_dir: Path) -> int:
    match = re.fullmatch(r"fold_(\d+)", split_dir.name)
    return int(match.group(1)) if match else 0


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    split_dir = Path(args.split_dir)
    out_dir = Path(args.out)
    fold = args.fold if args.fold is not None else _infer_fold(split_dir)
    try:
        train_list = split_dir / "train.csv"
        test_list = split_dir / "test.csv"
        num_classes = len({r.label for r in read_split_csv(train_list)})
        config = TrainConfig(
            architecture=args.arch,
            mode=args.mode,
            learning_rate=args.lr,
            momentum=args.momentum,
            batch_size=args.batch_size,
            epochs=args.epochs,
            num_classes=num_classes,
            seed=args.seed,
            unfreeze_all=args.unfreeze_all,
        )
        model, classes, logs = train_fold(
            config, train_list, args.data_root, verbose=not args.quiet
        )
        out_dir.mkdir(parents=True, exist_ok=True)
        artifact = out_dir / "model.pt"
        save_artifact(artifact, model, config, classes)
        write_epoch_logs(out_dir / "epochs.csv", logs)
        rows = predict_fold(artifact, test_list, fold, args.data_root,
                            batch_size=args.batch_size, expected_architecture=args.arch)
        write_predictions_csv(out_dir / "predictions.csv", rows)
    except (TrainerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    correct = sum(1 for r in rows if r.true_label == r.predicted_label)
    test_acc = 100.0 * correct / len(rows) if rows else float("nan")
    total_time = sum(log.wall_time_s for log in logs)
    print(
        f"{args.arch}/{args.mode} fold {fold}: final train acc "
        f"{logs[-1].train_accuracy:.2f}%, test acc {test_acc:.2f}%, "
        f"{config.epochs} epochs in {total_time:.1f}s"
    )
    print(f"wrote {artifact}, {out_dir / 'epochs.csv'}, {out_dir / 'predictions.csv'}")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
