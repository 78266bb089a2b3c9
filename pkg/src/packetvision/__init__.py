"""packetvision: raw network packets to labeled image datasets.

Pipeline: parse classic pcap captures, lay each packet's bytes into an
n x 8 matrix padded with 0xFF, permute the entries with Poisson-distributed
displacements, render each byte as a gray RGB pixel, and write
deterministic PNGs.  Dataset tooling adds a reproducibility manifest,
stratified k-fold splits, confusion-matrix metrics and a one-tailed
two-sample Z-test over fold accuracies.
"""

__version__ = "0.1.0"

from .errors import (
    BadMagic,
    ConfigError,
    DuplicateClassDirectoryCollision,
    EmptyInput,
    EmptyPacket,
    FoldOutOfRange,
    InsufficientSamples,
    KTooLarge,
    KTooSmall,
    PacketVisionError,
    RecordTooLarge,
    Truncated,
    TruncatedRecord,
    UnknownLabel,
    UnsupportedVersion,
)
from .rng import SplitMix64, combine_seed, mix64, poisson_sample
from .pcap import (
    LINKTYPE_ETHERNET,
    PcapFileInfo,
    RawPacket,
    open_pcap,
    read_packets,
    write_pcap,
)
from .imaging import (
    MATRIX_WIDTH,
    ByteMatrix,
    PacketImage,
    ShuffleSpec,
    encode_png,
    packet_to_image,
    render,
    shuffle,
    to_matrix,
)
from .dataset import (
    DEFAULT_LAMBDA,
    BuildConfig,
    DatasetManifest,
    FoldAssignment,
    InputSpec,
    SampleRecord,
    build_dataset,
    export_split,
    load_build_config,
    stratified_kfold,
)
from .evalstats import (
    ConfusionMatrix,
    MetricsReport,
    PerClassMetrics,
    PredictionRecord,
    ZTestResult,
    aggregate_folds,
    confusion_from_predictions,
    metrics,
    read_predictions,
    ztest,
)

__all__ = [
    "__version__",
    # errors
    "PacketVisionError",
    "BadMagic",
    "Truncated",
    "UnsupportedVersion",
    "TruncatedRecord",
    "RecordTooLarge",
    "EmptyPacket",
    "DuplicateClassDirectoryCollision",
    "ConfigError",
    "KTooSmall",
    "KTooLarge",
    "FoldOutOfRange",
    "UnknownLabel",
    "EmptyInput",
    "InsufficientSamples",
    # rng
    "SplitMix64",
    "mix64",
    "combine_seed",
    "poisson_sample",
    # pcap
    "RawPacket",
    "PcapFileInfo",
    "open_pcap",
    "read_packets",
    "write_pcap",
    "LINKTYPE_ETHERNET",
    # imaging
    "MATRIX_WIDTH",
    "ByteMatrix",
    "ShuffleSpec",
    "PacketImage",
    "to_matrix",
    "shuffle",
    "render",
    "encode_png",
    "packet_to_image",
    # dataset
    "DEFAULT_LAMBDA",
    "InputSpec",
    "BuildConfig",
    "SampleRecord",
    "DatasetManifest",
    "FoldAssignment",
    "load_build_config",
    "build_dataset",
    "stratified_kfold",
    "export_split",
    # evalstats
    "PredictionRecord",
    "ConfusionMatrix",
    "PerClassMetrics",
    "MetricsReport",
    "ZTestResult",
    "read_predictions",
    "confusion_from_predictions",
    "metrics",
    "aggregate_folds",
    "ztest",
]
