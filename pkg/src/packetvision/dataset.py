"""Dataset building, manifest bookkeeping and stratified k-fold splits.

Layout on disk: <output_dir>/<ClassName>/<sample_id>.png plus a
manifest.csv whose rows make every image re-derivable from (source pcap,
packet index, shuffle seed).
"""

from __future__ import annotations

import csv
import hashlib
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import (
    ConfigError,
    DuplicateClassDirectoryCollision,
    FoldOutOfRange,
    KTooLarge,
    KTooSmall,
)
from .imaging import ShuffleSpec, encode_png, packet_to_image, to_matrix
from .pcap import read_packets
from .rng import SplitMix64, combine_seed

MANIFEST_NAME = "manifest.csv"
MANIFEST_HEADER = [
    "sample_id",
    "class",
    "source_pcap",
    "packet_index",
    "image_relpath",
    "rows",
    "pad_count",
    "shuffle_seed",
]
SPLIT_HEADER = ["sample_id", "class", "image_relpath"]

DEFAULT_LAMBDA = 8.0  # mean displacement of one full matrix row


def _check_label(label: str) -> None:
    if not label:
        raise ConfigError("class label must be a non-empty string")
    if any(c in label for c in "/\\") or label in (".", ".."):
        raise ConfigError(f"class label {label!r} is not usable as a directory name")


@dataclass(frozen=True)
class InputSpec:
    """One pcap file feeding one class, optionally capped."""

    path: str
    label: str
    max_packets: Optional[int] = None

    def __post_init__(self):
        _check_label(self.label)
        if self.max_packets is not None and self.max_packets < 1:
            raise ConfigError("max_packets must be >= 1 when given")


@dataclass(frozen=True)
class BuildConfig:
    inputs: tuple[InputSpec, ...]
    output_dir: str
    global_seed: int
    lam: float = DEFAULT_LAMBDA

    def __post_init__(self):
        if not self.inputs:
            raise ConfigError("at least one input is required")
        if self.lam < 0:
            raise ConfigError("lambda must be non-negative")
        # Distinct labels that collapse on a case-insensitive filesystem
        # would write into one directory.
        by_fold: dict[str, str] = {}
        for inp in self.inputs:
            other = by_fold.setdefault(inp.label.casefold(), inp.label)
            if other != inp.label:
                raise DuplicateClassDirectoryCollision(
                    f"labels {other!r} and {inp.label!r} map to the same directory"
                )


def load_build_config(path) -> BuildConfig:
    """Parse a TOML build config.

    Top-level keys: output_dir, global_seed, lambda; one [[input]] table
    per source with path, label and optional max_packets.  Relative paths
    are resolved against the config file's directory.
    """
    path = Path(path)
    with open(path, "rb") as f:
        try:
            data = tomllib.load(f)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
    base = path.parent

    def require(key, types):
        if key not in data:
            raise ConfigError(f"missing required key {key!r} in {path}")
        if not isinstance(data[key], types):
            raise ConfigError(f"key {key!r} has the wrong type in {path}")
        return data[key]

    output_dir = require("output_dir", str)
    global_seed = require("global_seed", int)
    lam = data.get("lambda", DEFAULT_LAMBDA)
    if isinstance(lam, bool) or not isinstance(lam, (int, float)):
        raise ConfigError(f"key 'lambda' has the wrong type in {path}")
    raw_inputs = data.get("input")
    if not isinstance(raw_inputs, list) or not raw_inputs:
        raise ConfigError(f"at least one [[input]] table is required in {path}")
    inputs = []
    for i, tbl in enumerate(raw_inputs):
        if not isinstance(tbl, dict) or "path" not in tbl or "label" not in tbl:
            raise ConfigError(f"[[input]] #{i} needs 'path' and 'label' in {path}")
        max_packets = tbl.get("max_packets")
        if max_packets is not None and (isinstance(max_packets, bool) or not isinstance(max_packets, int)):
            raise ConfigError(f"[[input]] #{i} max_packets must be an integer")
        inputs.append(
            InputSpec(
                path=str(base / tbl["path"]),
                label=str(tbl["label"]),
                max_packets=max_packets,
            )
        )
    return BuildConfig(
        inputs=tuple(inputs),
        output_dir=str(base / output_dir),
        global_seed=global_seed,
        lam=float(lam),
    )


@dataclass(frozen=True)
class SampleRecord:
    """Manifest row: one generated image and how to re-derive it."""

    sample_id: str
    label: str
    source_pcap: str
    packet_index: int
    image_relpath: str
    rows: int
    pad_count: int
    shuffle_seed: int


@dataclass
class DatasetManifest:
    entries: list[SampleRecord]
    classes: tuple[str, ...]
    global_seed: Optional[int] = None
    lam: Optional[float] = None

    def __post_init__(self):
        known = set(self.classes)
        for e in self.entries:
            if e.label not in known:
                raise ValueError(f"entry {e.sample_id} has unknown class {e.label!r}")
        ids = [e.sample_id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("sample_id values must be unique")

    def class_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in self.classes}
        for e in self.entries:
            counts[e.label] += 1
        return counts

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(MANIFEST_HEADER)
            for e in self.entries:
                w.writerow(
                    [
                        e.sample_id,
                        e.label,
                        e.source_pcap,
                        e.packet_index,
                        e.image_relpath,
                        e.rows,
                        e.pad_count,
                        e.shuffle_seed,
                    ]
                )

    @classmethod
    def from_csv(cls, path) -> "DatasetManifest":
        """Load a manifest back; dataset-level seed/lambda are not stored
        in the CSV and come back as None."""
        entries = []
        classes: list[str] = []
        with open(path, newline="") as f:
            reader = csv.reader(f)
            header = next(reader, None)
            if header != MANIFEST_HEADER:
                raise ValueError(f"{path} does not have the manifest header")
            for row in reader:
                if not row:
                    continue
                sid, label, src, pkt_idx, relpath, rows, pad, seed = row
                entries.append(
                    SampleRecord(
                        sample_id=sid,
                        label=label,
                        source_pcap=src,
                        packet_index=int(pkt_idx),
                        image_relpath=relpath,
                        rows=int(rows),
                        pad_count=int(pad),
                        shuffle_seed=int(seed),
                    )
                )
                if label not in classes:
                    classes.append(label)
        return cls(entries=entries, classes=tuple(classes))


def _build_one(task: tuple[bytes, float, int, str]) -> tuple[int, int]:
    """Render and write one image; returns (rows, pad_count).

    Module-level so a process pool can pickle it; pure apart from the file
    write, so worker count cannot change any output byte.
    """
    data, lam, seed, out_path = task
    matrix = to_matrix(data)
    image = packet_to_image(data, ShuffleSpec(lam=lam, seed=seed))
    encode_png(image, out_path)
    return matrix.rows, matrix.pad_count


def build_dataset(config: BuildConfig, jobs: int = 1) -> DatasetManifest:
    """Turn every configured pcap into a labeled PNG tree plus manifest.

    Every non-empty packet (up to max_packets per input) becomes one PNG
    under <output_dir>/<label>/; the per-image shuffle seed is derived
    from (global_seed, input index, packet index) and recorded so each
    image can be regenerated bit for bit.
    """
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    classes: list[str] = []
    tasks: list[tuple[bytes, float, int, str]] = []
    meta: list[tuple[str, str, str, int, str, int]] = []
    for file_idx, inp in enumerate(config.inputs):
        if inp.label not in classes:
            classes.append(inp.label)
        (out / inp.label).mkdir(exist_ok=True)
        for pkt_idx, packet in enumerate(read_packets(inp.path)):
            if inp.max_packets is not None and pkt_idx >= inp.max_packets:
                break
            sample_id = f"{inp.label}_{file_idx:03d}_{pkt_idx:06d}"
            relpath = f"{inp.label}/{sample_id}.png"
            seed = combine_seed(config.global_seed, file_idx, pkt_idx)
            tasks.append((packet.data, config.lam, seed, str(out / relpath)))
            meta.append((sample_id, inp.label, inp.path, pkt_idx, relpath, seed))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_build_one, tasks, chunksize=64))
    else:
        results = [_build_one(t) for t in tasks]

    entries = [
        SampleRecord(
            sample_id=sid,
            label=label,
            source_pcap=src,
            packet_index=pkt_idx,
            image_relpath=relpath,
            rows=rows,
            pad_count=pad,
            shuffle_seed=seed,
        )
        for (sid, label, src, pkt_idx, relpath, seed), (rows, pad) in zip(meta, results)
    ]
    manifest = DatasetManifest(
        entries=entries,
        classes=tuple(classes),
        global_seed=config.global_seed,
        lam=config.lam,
    )
    manifest.write_csv(out / MANIFEST_NAME)
    return manifest


@dataclass(frozen=True)
class FoldAssignment:
    """Stratified assignment of every sample_id to a fold in 0..k-1."""

    k: int
    assignment: dict[str, int]
    seed: int


def _label_stream(seed: int, label: str) -> SplitMix64:
    # Independent per-class stream: adding or removing a class never
    # changes another class's shuffle.
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8).digest()
    return SplitMix64(combine_seed(seed, int.from_bytes(digest, "big")))


def stratified_kfold(manifest: DatasetManifest, k: int, seed: int) -> FoldAssignment:
    """Deal each class's samples round-robin into k folds after a seeded
    shuffle, so per-class fold sizes differ by at most one."""
    if k < 2:
        raise KTooSmall("k must be >= 2")
    by_class: dict[str, list[str]] = {c: [] for c in manifest.classes}
    for e in manifest.entries:
        by_class[e.label].append(e.sample_id)
    for label, ids in by_class.items():
        if len(ids) < k:
            raise KTooLarge(
                f"class {label!r} has {len(ids)} samples, fewer than k={k}"
            )
    assignment: dict[str, int] = {}
    for label in sorted(by_class):
        ids = list(by_class[label])
        _label_stream(seed, label).shuffle(ids)
        for pos, sid in enumerate(ids):
            assignment[sid] = pos % k
    return FoldAssignment(k=k, assignment=assignment, seed=seed)


def export_split(
    manifest: DatasetManifest,
    assignment: FoldAssignment,
    fold: int,
    out_dir,
) -> tuple[Path, Path]:
    """Write train.csv / test.csv for one held-out fold.

    Rows keep manifest order; the two files partition the manifest.
    """
    if not 0 <= fold < assignment.k:
        raise FoldOutOfRange(f"fold {fold} outside 0..{assignment.k - 1}")
    missing = [e.sample_id for e in manifest.entries if e.sample_id not in assignment.assignment]
    if missing:
        raise ValueError(f"assignment is missing {len(missing)} manifest samples")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    train_path = out_dir / "train.csv"
    test_path = out_dir / "test.csv"
    with open(train_path, "w", newline="") as ftrain, open(test_path, "w", newline="") as ftest:
        wtrain = csv.writer(ftrain)
        wtest = csv.writer(ftest)
        wtrain.writerow(SPLIT_HEADER)
        wtest.writerow(SPLIT_HEADER)
        for e in manifest.entries:
            row = [e.sample_id, e.label, e.image_relpath]
            if assignment.assignment[e.sample_id] == fold:
                wtest.writerow(row)
            else:
                wtrain.writerow(row)
    return train_path, test_path
