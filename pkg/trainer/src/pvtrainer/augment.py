"""Training-time augmentation: flips plus free rotation with black fill."""

from __future__ import annotations

import hashlib
import random

from PIL import Image


def augment(image: Image.Image, *, hflip: bool, vflip: bool, angle_deg: float) -> Image.Image:
    """Apply the given flips, then rotate about the center.

    Rotation keeps the original size and fills exposed pixels with black,
    matching the zero-byte pixel value. With everything forced off
    (hflip=vflip=False, angle_deg=0) this is the identity.
    """
    out = image
    if hflip:
        out = out.transpose(Image.Transpose.FLIP_LEFT_RIGHT)
    if vflip:
        out = out.transpose(Image.Transpose.FLIP_TOP_BOTTOM)
    if angle_deg % 360 != 0:
        out = out.rotate(angle_deg, resample=Image.Resampling.BILINEAR, fillcolor=(0, 0, 0))
    elif out is image:
        out = image.copy()
    return out


def random_augment(image: Image.Image, rng: random.Random) -> Image.Image:
    """Random horizontal/vertical flips and a uniform rotation in [0, 360)."""
    return augment(
        image,
        hflip=rng.random() < 0.5,
        vflip=rng.random() < 0.5,
        angle_deg=rng.uniform(0.0, 360.0),
    )


def augmentation_rng(seed: int, epoch: int, index: int) -> random.Random:
    """Deterministic per-(epoch, sample) stream, independent of data-loader
    worker count or batch order."""
    digest = hashlib.blake2b(
        f"{seed}:{epoch}:{index}".encode(), digest_size=8
    ).digest()
    return random.Random(int.from_bytes(digest, "big"))
