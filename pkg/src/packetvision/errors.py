"""Exception types raised by the pipeline."""


class PacketVisionError(Exception):
    """Base class for every error this package raises on purpose."""


class BadMagic(PacketVisionError):
    """File is not a classic pcap (wrong magic number)."""


class Truncated(PacketVisionError):
    """File is shorter than the 24-byte pcap global header."""


class UnsupportedVersion(PacketVisionError):
    """pcap version is not 2.4."""


class TruncatedRecord(PacketVisionError):
    """A record header or body extends past the end of the file."""


class RecordTooLarge(PacketVisionError):
    """A record's incl_len exceeds both snaplen and the sanity bound."""


class EmptyPacket(PacketVisionError):
    """A zero-length packet where at least one byte is required."""


class DuplicateClassDirectoryCollision(PacketVisionError):
    """Two distinct class labels would map to the same directory."""


class ConfigError(PacketVisionError):
    """Build configuration is missing keys or has invalid values."""


class KTooSmall(PacketVisionError):
    """Fold count below 2."""


class KTooLarge(PacketVisionError):
    """Some class has fewer samples than the requested fold count."""


class FoldOutOfRange(PacketVisionError):
    """Fold index outside 0..k-1."""


class UnknownLabel(PacketVisionError):
    """A prediction names a label outside the class set."""


class EmptyInput(PacketVisionError):
    """An operation received an empty sequence it cannot work on."""


class InsufficientSamples(PacketVisionError):
    """Too few samples for the statistical test."""
