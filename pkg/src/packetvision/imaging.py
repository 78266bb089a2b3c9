"""Packet bytes to image: pad, shuffle, render, encode.

A packet of b bytes becomes a matrix of ceil(b/8) rows by 8 columns, the
tail padded with 0xFF.  The matrix is then permuted by Poisson-distributed
displacement swaps so protocol headers stop sitting at fixed pixel
positions, each byte value becomes one gray RGB pixel, and the raster is
written out as a byte-deterministic PNG.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .errors import EmptyPacket
from .rng import SplitMix64, poisson_sample

MATRIX_WIDTH = 8


@dataclass(frozen=True)
class ByteMatrix:
    """Row-major byte matrix of `rows` x 8 entries, 0xFF-padded."""

    rows: int
    data: bytes
    pad_count: int

    def __post_init__(self):
        if self.rows < 1:
            raise ValueError("rows must be >= 1")
        if len(self.data) != self.rows * MATRIX_WIDTH:
            raise ValueError(
                f"data length {len(self.data)} != rows*{MATRIX_WIDTH} = {self.rows * MATRIX_WIDTH}"
            )
        if not 0 <= self.pad_count < MATRIX_WIDTH:
            raise ValueError("pad_count must be in 0..7")

    @property
    def width(self) -> int:
        return MATRIX_WIDTH


@dataclass(frozen=True)
class ShuffleSpec:
    """Poisson mean (in byte positions) and seed driving one shuffle.

    lam == 0 means the identity shuffle.
    """

    lam: float
    seed: int

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lam must be non-negative")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class PacketImage:
    """n x 8 RGB raster; every pixel is gray (R == G == B)."""

    pixels: np.ndarray  # shape (height, 8, 3), dtype uint8

    def __post_init__(self):
        px = self.pixels
        if px.ndim != 3 or px.shape[1] != MATRIX_WIDTH or px.shape[2] != 3:
            raise ValueError(f"pixels must have shape (n, {MATRIX_WIDTH}, 3), got {px.shape}")
        if px.dtype != np.uint8:
            raise ValueError("pixels must be uint8")
        if not (
            np.array_equal(px[:, :, 0], px[:, :, 1])
            and np.array_equal(px[:, :, 0], px[:, :, 2])
        ):
            raise ValueError("pixels must be grayscale (R == G == B)")
        px.setflags(write=False)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return MATRIX_WIDTH


def to_matrix(packet_bytes: bytes) -> ByteMatrix:
    """Lay packet bytes into a ceil(len/8) x 8 matrix, padding with 0xFF.

    Byte order is preserved: the first packet byte lands at row 0, col 0.
    """
    n = len(packet_bytes)
    if n == 0:
        raise EmptyPacket("cannot build a matrix from an empty packet")
    rows = -(-n // MATRIX_WIDTH)
    pad_count = rows * MATRIX_WIDTH - n
    return ByteMatrix(
        rows=rows,
        data=bytes(packet_bytes) + b"\xff" * pad_count,
        pad_count=pad_count,
    )


def shuffle(matrix: ByteMatrix, spec: ShuffleSpec) -> ByteMatrix:
    """Permute matrix entries by Poisson displacement swaps.

    One left-to-right pass over the flattened matrix: position i swaps
    with (i + d_i) mod L where d_i ~ Poisson(spec.lam) from a stream
    seeded with spec.seed.  Swaps always permute, so the byte multiset is
    preserved; rows/pad_count metadata pass through unchanged.
    """
    if spec.lam == 0:
        return matrix
    rng = SplitMix64(spec.seed)
    buf = bytearray(matrix.data)
    size = len(buf)
    for i in range(size):
        d = poisson_sample(spec.lam, rng)
        j = (i + d) % size
        buf[i], buf[j] = buf[j], buf[i]
    return ByteMatrix(rows=matrix.rows, data=bytes(buf), pad_count=matrix.pad_count)


def render(matrix: ByteMatrix) -> PacketImage:
    """Map each byte value v to the gray pixel (v, v, v)."""
    gray = np.frombuffer(matrix.data, dtype=np.uint8).reshape(matrix.rows, MATRIX_WIDTH)
    return PacketImage(pixels=np.repeat(gray[:, :, np.newaxis], 3, axis=2))


_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_ZLIB_LEVEL = 6  # fixed so equal pixels give equal files


def _chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload))
    )


def encode_png(image: PacketImage, path) -> None:
    """Write an 8-bit RGB truecolor PNG, non-interlaced, no alpha.

    Only IHDR, IDAT and IEND chunks are emitted (no timestamps, no
    ancillary chunks), so the file bytes are a pure function of the
    pixels.
    """
    ihdr = struct.pack(">IIBBBBB", image.width, image.height, 8, 2, 0, 0, 0)
    raw = bytearray()
    for r in range(image.height):
        raw.append(0)  # filter type 0 (None) per scanline
        raw += image.pixels[r].tobytes()
    idat = zlib.compress(bytes(raw), _ZLIB_LEVEL)
    with open(path, "wb") as f:
        f.write(_PNG_SIGNATURE)
        f.write(_chunk(b"IHDR", ihdr))
        f.write(_chunk(b"IDAT", idat))
        f.write(_chunk(b"IEND", b""))


def packet_to_image(packet_bytes: bytes, spec: ShuffleSpec) -> PacketImage:
    """Full pipeline for one packet: pad to matrix, shuffle, render."""
    return render(shuffle(to_matrix(packet_bytes), spec))
