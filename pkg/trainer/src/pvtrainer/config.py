"""Training configuration and per-epoch log rows."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidArchitecture

ARCHITECTURES = ("alexnet", "resnet18", "squeezenet")
MODES = ("scratch", "finetune")


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for one fold's training run.

    finetune starts from ImageNet weights and trains only the replaced
    classifier head (unfreeze_all trains everything); scratch uses random
    initialization and trains all layers.
    """

    architecture: str
    mode: str
    learning_rate: float = 0.001
    momentum: float = 0.9
    batch_size: int = 32
    epochs: int = 50
    num_classes: int = 4
    input_size: int = 224
    seed: int = 0
    unfreeze_all: bool = False

    def __post_init__(self):
        if self.architecture not in ARCHITECTURES:
            raise InvalidArchitecture(
                f"architecture must be one of {ARCHITECTURES}, got {self.architecture!r}"
            )
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.num_classes < 2:
            raise ValueError("num_classes must be >= 2")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.input_size < 1:
            raise ValueError("input_size must be positive")


@dataclass(frozen=True)
class EpochLog:
    epoch: int
    train_loss: float
    train_accuracy: float  # percent
    wall_time_s: float
