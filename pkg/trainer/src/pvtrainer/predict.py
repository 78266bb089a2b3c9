"""Test-fold inference, emitting the evaluator's predictions CSV format."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import torch
from torch.utils.data import DataLoader

from .data import PacketImageDataset, read_split_csv
from .models import normalization_for
from .train import load_artifact

PREDICTIONS_HEADER = ["fold", "sample_id", "true_label", "predicted_label"]


@dataclass(frozen=True)
class PredictionRow:
    fold: int
    sample_id: str
    true_label: str
    predicted_label: str


def predict_fold(
    artifact_path,
    test_list,
    fold: int,
    data_root,
    batch_size: int = 32,
    expected_architecture: str | None = None,
) -> list[PredictionRow]:
    """Run the saved model over a test list, one row per sample.

    Inference is deterministic: eval mode, no augmentation, file order
    preserved. Predicted labels always come from the artifact's class
    list.
    """
    model, meta = load_artifact(artifact_path, expected_architecture=expected_architecture)
    rows = read_split_csv(test_list)
    classes = list(meta["classes"])
    if not rows:
        return []
    dataset = PacketImageDataset(
        rows,
        data_root,
        classes,
        input_size=meta["input_size"],
        train=False,
        normalize=normalization_for(meta["mode"]),
    )
    loader = DataLoader(dataset, batch_size=batch_size, shuffle=False, num_workers=0)
    predicted: list[int] = []
    with torch.no_grad():
        for x, _ in loader:
            predicted.extend(model(x).argmax(dim=1).tolist())
    return [
        PredictionRow(fold, row.sample_id, row.label, classes[j])
        for row, j in zip(rows, predicted)
    ]


def write_predictions_csv(path, rows: Sequence[PredictionRow]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(PREDICTIONS_HEADER)
        for r in rows:
            w.writerow([r.fold, r.sample_id, r.true_label, r.predicted_label])
