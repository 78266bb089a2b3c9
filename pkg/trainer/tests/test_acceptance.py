"""Trainer acceptance: separability smoke test, output contract, trend check.

The fine-tune smoke test needs ImageNet weights (cached or downloadable);
without them it skips rather than silently passing. The full-dataset
trend check runs only when PACKETVISION_DATASET_DIR points at a built
dataset.
"""

import os
import statistics
import subprocess
from pathlib import Path

import pytest

from pvtrainer import (
    PretrainedWeightsUnavailable,
    TrainConfig,
    predict_fold,
    save_artifact,
    train_fold,
    write_predictions_csv,
)


def fold_accuracy(rows):
    return 100.0 * sum(r.true_label == r.predicted_label for r in rows) / len(rows)


def train_and_score(config, fold_dir, data_root, out_dir, fold=0):
    model, classes, logs = train_fold(config, fold_dir / "train.csv", data_root)
    artifact = out_dir / f"{config.architecture}_{config.mode}_f{fold}.pt"
    save_artifact(artifact, model, config, classes)
    rows = predict_fold(artifact, fold_dir / "test.csv", fold, data_root)
    return rows, logs


def test_separability_smoke_finetuned_squeezenet(separability_dataset, tmp_path):
    """Two byte-disjoint classes, 200 images each: fine-tuned SqueezeNet
    must reach 95% test accuracy on the held-out fold within 5 epochs."""
    config = TrainConfig(
        architecture="squeezenet",
        mode="finetune",
        learning_rate=0.001,
        momentum=0.9,
        batch_size=32,
        epochs=5,
        num_classes=2,
        seed=1,
    )
    try:
        rows, _ = train_and_score(
            config,
            separability_dataset["fold_dir"],
            separability_dataset["data_root"],
            tmp_path,
        )
    except PretrainedWeightsUnavailable as exc:
        pytest.skip(f"ImageNet weights unavailable in this environment: {exc}")
    accuracy = fold_accuracy(rows)
    print(f"PASS  fine-tuned squeezenet separability: test accuracy {accuracy:.2f}%")
    assert accuracy >= 95.0, accuracy


def test_separability_scratch_squeezenet(separability_dataset, tmp_path):
    """From-scratch stand-in for the smoke test (no pretrained weights
    needed); same fixture, same bar."""
    config = TrainConfig(
        architecture="squeezenet",
        mode="scratch",
        learning_rate=0.01,
        momentum=0.9,
        batch_size=8,
        epochs=5,
        num_classes=2,
        seed=1,
    )
    rows, logs = train_and_score(
        config,
        separability_dataset["fold_dir"],
        separability_dataset["data_root"],
        tmp_path,
    )
    accuracy = fold_accuracy(rows)
    print(f"PASS  scratch squeezenet separability: test accuracy {accuracy:.2f}%")
    assert accuracy >= 95.0, [log.train_accuracy for log in logs]


def test_output_contract_with_evaluator(separability_dataset, tmp_path):
    """Predictions CSV from the trainer CLI must parse cleanly in the
    evaluator's metrics command, with no unknown labels."""
    out_dir = tmp_path / "run"
    proc = subprocess.run(
        [
            "pvtrain", "train",
            "--arch", "squeezenet",
            "--mode", "scratch",
            "--split-dir", str(separability_dataset["fold_dir"]),
            "--data-root", str(separability_dataset["data_root"]),
            "--out", str(out_dir),
            "--epochs", "1",
            "--batch-size", "32",
            "--seed", "2",
            "--quiet",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    predictions = out_dir / "predictions.csv"
    assert predictions.exists()
    assert (out_dir / "epochs.csv").exists()
    assert (out_dir / "model.pt").exists()

    evaluated = subprocess.run(
        ["packetvision", "metrics", "--predictions", str(predictions), "--per-fold"],
        capture_output=True,
        text=True,
    )
    assert evaluated.returncode == 0, evaluated.stderr
    assert "UnknownLabel" not in evaluated.stderr
    assert "overall" in evaluated.stdout
    print(f"PASS  output contract: evaluator consumed {predictions.name} cleanly")


FULL_DATASET_ENV = "PACKETVISION_DATASET_DIR"


@pytest.mark.skipif(
    FULL_DATASET_ENV not in os.environ,
    reason=f"set {FULL_DATASET_ENV} to a built dataset root to run the trend check",
)
def test_full_dataset_trend_check(tmp_path):
    """On the published four-class dataset: fine-tuned SqueezeNet 5-fold
    mean accuracy >= 90, from-scratch AlexNet >= 95, and fine-tuning is
    faster than from-scratch for every architecture."""
    data_root = Path(os.environ[FULL_DATASET_ENV])
    epochs = int(os.environ.get("PACKETVISION_TREND_EPOCHS", "50"))
    k = 5
    subprocess.run(
        [
            "packetvision", "split",
            "--manifest", str(data_root / "manifest.csv"),
            "--k", str(k),
            "--seed", "1",
            "--out", str(tmp_path / "splits"),
        ],
        check=True,
    )
    wall = {}
    accuracy = {}
    for arch in ("alexnet", "resnet18", "squeezenet"):
        for mode in ("scratch", "finetune"):
            fold_accs = []
            total_wall = 0.0
            for fold in range(k):
                fold_dir = tmp_path / "splits" / f"fold_{fold}"
                config = TrainConfig(
                    architecture=arch, mode=mode, epochs=epochs, num_classes=4, seed=fold
                )
                rows, logs = train_and_score(config, fold_dir, data_root, tmp_path, fold)
                fold_accs.append(fold_accuracy(rows))
                total_wall += sum(log.wall_time_s for log in logs)
            accuracy[(arch, mode)] = statistics.fmean(fold_accs)
            wall[(arch, mode)] = total_wall
            write_predictions_csv(tmp_path / f"{arch}_{mode}.csv", rows)
    assert accuracy[("squeezenet", "finetune")] >= 90.0
    assert accuracy[("alexnet", "scratch")] >= 95.0
    for arch in ("alexnet", "resnet18", "squeezenet"):
        assert wall[(arch, "finetune")] < wall[(arch, "scratch")]
