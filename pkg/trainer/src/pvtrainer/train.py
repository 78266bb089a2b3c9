"""Training loop, artifact persistence, epoch logs."""

from __future__ import annotations

import csv
import time
from pathlib import Path
from typing import Sequence

import torch
from torch import nn
from torch.utils.data import DataLoader

from .config import EpochLog, TrainConfig
from .data import PacketImageDataset, read_split_csv
from .errors import ArtifactMismatch
from .models import build_model, build_untrained, normalization_for

EPOCHS_HEADER = ["epoch", "train_loss", "train_accuracy", "wall_time_s"]


def train_fold(
    config: TrainConfig,
    train_list,
    data_root,
    verbose: bool = False,
) -> tuple[nn.Module, list[str], list[EpochLog]]:
    """Train one fold for exactly config.epochs; returns (model, classes, logs).

    Classes are the sorted labels of the train list; their count must
    match config.num_classes since it fixes the head width.
    """
    rows = read_split_csv(train_list)
    if not rows:
        raise ValueError(f"{train_list} has no samples")
    classes = sorted({r.label for r in rows})
    if len(classes) != config.num_classes:
        raise ValueError(
            f"train list has {len(classes)} classes but config.num_classes={config.num_classes}"
        )
    model = build_model(
        config.architecture,
        config.mode,
        config.num_classes,
        seed=config.seed,
        unfreeze_all=config.unfreeze_all,
    )
    dataset = PacketImageDataset(
        rows,
        data_root,
        classes,
        input_size=config.input_size,
        train=True,
        seed=config.seed,
        normalize=normalization_for(config.mode),
    )
    loader = DataLoader(
        dataset,
        batch_size=config.batch_size,
        shuffle=True,
        num_workers=0,
        generator=torch.Generator().manual_seed(config.seed),
    )
    trainable = [p for p in model.parameters() if p.requires_grad]
    optimizer = torch.optim.SGD(trainable, lr=config.learning_rate, momentum=config.momentum)
    loss_fn = nn.CrossEntropyLoss()
    logs: list[EpochLog] = []
    for epoch in range(1, config.epochs + 1):
        dataset.set_epoch(epoch)
        start = time.perf_counter()
        model.train()
        total_loss = 0.0
        correct = 0
        seen = 0
        for x, y in loader:
            optimizer.zero_grad()
            out = model(x)
            loss = loss_fn(out, y)
            loss.backward()
            optimizer.step()
            total_loss += loss.item() * len(y)
            correct += int((out.argmax(dim=1) == y).sum())
            seen += len(y)
        log = EpochLog(
            epoch=epoch,
            train_loss=total_loss / seen,
            train_accuracy=100.0 * correct / seen,
            wall_time_s=time.perf_counter() - start,
        )
        logs.append(log)
        if verbose:
            print(
                f"epoch {log.epoch}: loss={log.train_loss:.4f} "
                f"acc={log.train_accuracy:.2f}% ({log.wall_time_s:.1f}s)"
            )
    return model, classes, logs


def write_epoch_logs(path, logs: Sequence[EpochLog]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(EPOCHS_HEADER)
        for log in logs:
            w.writerow([log.epoch, f"{log.train_loss:.6f}", f"{log.train_accuracy:.4f}", f"{log.wall_time_s:.3f}"])


def save_artifact(path, model: nn.Module, config: TrainConfig, classes: Sequence[str]) -> None:
    """Persist everything predict needs: weights plus identity metadata."""
    torch.save(
        {
            "state_dict": model.state_dict(),
            "architecture": config.architecture,
            "mode": config.mode,
            "num_classes": config.num_classes,
            "input_size": config.input_size,
            "classes": list(classes),
        },
        path,
    )


def load_artifact(path, expected_architecture: str | None = None):
    """Rebuild the model from an artifact; no weight downloads involved.

    Returns (model, metadata dict). Raises ArtifactMismatch when the file
    is not an artifact, names another architecture, or its weights do not
    fit the declared shape.
    """
    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except Exception as exc:
        raise ArtifactMismatch(f"{path} is not a readable model artifact: {exc}") from exc
    required = {"state_dict", "architecture", "num_classes", "classes", "mode", "input_size"}
    if not isinstance(payload, dict) or not required.issubset(payload):
        raise ArtifactMismatch(f"{path} is missing artifact fields")
    arch = payload["architecture"]
    if expected_architecture is not None and arch != expected_architecture:
        raise ArtifactMismatch(
            f"artifact was trained as {arch!r}, expected {expected_architecture!r}"
        )
    model = build_untrained(arch, payload["num_classes"])
    try:
        model.load_state_dict(payload["state_dict"])
    except Exception as exc:
        raise ArtifactMismatch(f"weights in {path} do not fit {arch}: {exc}") from exc
    model.eval()
    meta = {k: payload[k] for k in required if k != "state_dict"}
    return model, meta
