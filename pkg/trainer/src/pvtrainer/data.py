"""Split-file parsing and the image dataset feeding the models.

Consumes the dataset builder's outputs as plain files: train.csv/test.csv
rows (sample_id,class,image_relpath) and the PNG tree they point into.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import torch
from PIL import Image
from torch.utils.data import Dataset
from torchvision.transforms import functional as TF

from .augment import augmentation_rng, random_augment
from .errors import MissingImage

SPLIT_HEADER = ["sample_id", "class", "image_relpath"]


@dataclass(frozen=True)
class SplitRow:
    sample_id: str
    label: str
    image_relpath: str


def read_split_csv(path) -> list[SplitRow]:
    rows = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != SPLIT_HEADER:
            raise ValueError(f"{path} does not have the split header {SPLIT_HEADER}")
        for row in reader:
            if not row:
                continue
            sid, label, relpath = row
            rows.append(SplitRow(sid, label, relpath))
    return rows


class PacketImageDataset(Dataset):
    """PNGs resized to input_size; augmentation only when train=True.

    Targets are indices into `classes`; a label outside `classes` maps to
    -1 (prediction does not need targets). Augmentation randomness is
    seeded per (seed, epoch, sample index), so results do not depend on
    loader worker count; call set_epoch() each epoch.
    """

    def __init__(
        self,
        rows: Sequence[SplitRow],
        data_root,
        classes: Sequence[str],
        input_size: int = 224,
        train: bool = False,
        seed: int = 0,
        normalize: Optional[tuple[tuple[float, ...], tuple[float, ...]]] = None,
    ):
        self.rows = list(rows)
        self.data_root = Path(data_root)
        self.class_index = {c: i for i, c in enumerate(classes)}
        self.input_size = input_size
        self.train = train
        self.seed = seed
        self.normalize = normalize
        self._epoch = 1
        missing = [r.image_relpath for r in self.rows if not (self.data_root / r.image_relpath).exists()]
        if missing:
            raise MissingImage(
                f"{len(missing)} images missing under {self.data_root}, first: {missing[0]}"
            )

    def set_epoch(self, epoch: int) -> None:
        self._epoch = epoch

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: int) -> tuple[torch.Tensor, int]:
        row = self.rows[index]
        with Image.open(self.data_root / row.image_relpath) as img:
            image = img.convert("RGB").resize(
                (self.input_size, self.input_size), Image.Resampling.BILINEAR
            )
        if self.train:
            image = random_augment(image, augmentation_rng(self.seed, self._epoch, index))
        tensor = TF.to_tensor(image)
        if self.normalize is not None:
            mean, std = self.normalize
            tensor = TF.normalize(tensor, list(mean), list(std))
        return tensor, self.class_index.get(row.label, -1)
