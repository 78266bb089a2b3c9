"""pvtrainer: CNN training/evaluation on packetvision image datasets.

Consumes the dataset pipeline's file formats (train.csv/test.csv splits
plus the PNG tree) and produces predictions CSVs its evaluator reads
directly, together with per-epoch training logs.
"""

__version__ = "0.1.0"

from .augment import augment, augmentation_rng, random_augment
from .config import ARCHITECTURES, MODES, EpochLog, TrainConfig
from .data import PacketImageDataset, SplitRow, read_split_csv
from .errors import (
    ArtifactMismatch,
    InvalidArchitecture,
    MissingImage,
    PretrainedWeightsUnavailable,
    TrainerError,
)
from .models import build_model, build_untrained, normalization_for
from .predict import PredictionRow, predict_fold, write_predictions_csv
from .train import load_artifact, save_artifact, train_fold, write_epoch_logs

__all__ = [
    "__version__",
    "ARCHITECTURES",
    "MODES",
    "TrainConfig",
    "EpochLog",
    "SplitRow",
    "read_split_csv",
    "PacketImageDataset",
    "augment",
    "random_augment",
    "augmentation_rng",
    "build_model",
    "build_untrained",
    "normalization_for",
    "train_fold",
    "save_artifact",
    "load_artifact",
    "write_epoch_logs",
    "predict_fold",
    "PredictionRow",
    "write_predictions_csv",
    "TrainerError",
    "InvalidArchitecture",
    "MissingImage",
    "ArtifactMismatch",
    "PretrainedWeightsUnavailable",
]
