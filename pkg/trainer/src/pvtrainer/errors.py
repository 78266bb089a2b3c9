"""Trainer exception types."""


class TrainerError(Exception):
    """Base class for trainer errors."""


class InvalidArchitecture(TrainerError):
    """Architecture name is not one of the supported CNNs."""


class MissingImage(TrainerError):
    """A split row points at a PNG that does not exist."""


class ArtifactMismatch(TrainerError):
    """A model artifact does not match the expected architecture/shape."""


class PretrainedWeightsUnavailable(TrainerError):
    """ImageNet weights could not be loaded (no cache, no network)."""
