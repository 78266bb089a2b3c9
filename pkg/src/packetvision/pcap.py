"""Classic pcap reading and writing, bit-exact.

File layout: one 24-byte global header (magic, version, thiszone, sigfigs,
snaplen, network), then per record a 16-byte header (ts_sec, ts_usec,
incl_len, orig_len) followed by incl_len captured bytes.  Byte order is
whatever the magic says.  The nanosecond-precision magic variant is
accepted and its fractional timestamps are normalized to microseconds;
pcapng is rejected by magic.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import (
    BadMagic,
    EmptyPacket,
    RecordTooLarge,
    Truncated,
    TruncatedRecord,
    UnsupportedVersion,
)

MAGIC_MICROS = 0xA1B2C3D4
MAGIC_NANOS = 0xA1B23C4D
LINKTYPE_ETHERNET = 1

GLOBAL_HEADER_LEN = 24
RECORD_HEADER_LEN = 16

# incl_len beyond both snaplen and this bound signals corrupt framing, not
# a jumbo capture.
SANE_RECORD_LIMIT = 262144

_DEFAULT_SNAPLEN = 65535


@dataclass(frozen=True)
class RawPacket:
    """One captured packet, link layer onward, plus capture metadata."""

    data: bytes
    captured_len: int = -1
    original_len: int = -1
    timestamp_s: int = 0
    timestamp_us: int = 0
    link_type: int = LINKTYPE_ETHERNET

    def __post_init__(self):
        if self.captured_len < 0:
            object.__setattr__(self, "captured_len", len(self.data))
        if self.original_len < 0:
            object.__setattr__(self, "original_len", self.captured_len)
        if self.captured_len != len(self.data):
            raise ValueError(
                f"captured_len {self.captured_len} != len(data) {len(self.data)}"
            )
        if self.captured_len > self.original_len:
            raise ValueError(
                f"captured_len {self.captured_len} > original_len {self.original_len}"
            )
        if self.timestamp_s < 0 or self.timestamp_us < 0:
            raise ValueError("timestamps must be non-negative")


@dataclass(frozen=True)
class PcapFileInfo:
    """Parsed global header plus counts from a full scan.

    skipped_empty counts zero-length records, which the reader drops.
    """

    byte_order: str  # "little" or "big"
    version_major: int
    version_minor: int
    snaplen: int
    link_type: int
    packet_count: int
    skipped_empty: int = 0


@dataclass(frozen=True)
class _GlobalHeader:
    prefix: str  # struct byte-order prefix, "<" or ">"
    nanos: bool
    version_major: int
    version_minor: int
    snaplen: int
    link_type: int

    @property
    def byte_order(self) -> str:
        return "little" if self.prefix == "<" else "big"


def _parse_global_header(raw: bytes) -> _GlobalHeader:
    if len(raw) < GLOBAL_HEADER_LEN:
        raise Truncated(
            f"file is {len(raw)} bytes, shorter than the {GLOBAL_HEADER_LEN}-byte global header"
        )
    magic_le = struct.unpack_from("<I", raw)[0]
    magic_be = struct.unpack_from(">I", raw)[0]
    if magic_le == MAGIC_MICROS:
        prefix, nanos = "<", False
    elif magic_le == MAGIC_NANOS:
        prefix, nanos = "<", True
    elif magic_be == MAGIC_MICROS:
        prefix, nanos = ">", False
    elif magic_be == MAGIC_NANOS:
        prefix, nanos = ">", True
    else:
        raise BadMagic(f"not a classic pcap file (magic bytes {raw[:4].hex()})")
    vmaj, vmin, _thiszone, _sigfigs, snaplen, network = struct.unpack_from(
        prefix + "HHiIII", raw, 4
    )
    if (vmaj, vmin) != (2, 4):
        raise UnsupportedVersion(f"pcap version {vmaj}.{vmin}, expected 2.4")
    return _GlobalHeader(prefix, nanos, vmaj, vmin, snaplen, network)


def _check_record_len(incl_len: int, snaplen: int) -> None:
    if incl_len > snaplen and incl_len > SANE_RECORD_LIMIT:
        raise RecordTooLarge(
            f"record of {incl_len} bytes exceeds snaplen {snaplen} and the "
            f"{SANE_RECORD_LIMIT}-byte sanity bound"
        )


def open_pcap(path) -> PcapFileInfo:
    """Parse the global header and count records by a full scan.

    packet_count counts the packets read_packets would yield, i.e. records
    with at least one captured byte.
    """
    path = Path(path)
    size = path.stat().st_size
    with open(path, "rb") as f:
        header = _parse_global_header(f.read(GLOBAL_HEADER_LEN))
        pos = GLOBAL_HEADER_LEN
        count = 0
        skipped = 0
        while pos < size:
            if pos + RECORD_HEADER_LEN > size:
                raise TruncatedRecord(
                    f"record header at offset {pos} extends past end of file"
                )
            f.seek(pos)
            _, _, incl_len, _ = struct.unpack(
                header.prefix + "IIII", f.read(RECORD_HEADER_LEN)
            )
            _check_record_len(incl_len, header.snaplen)
            pos += RECORD_HEADER_LEN
            if pos + incl_len > size:
                raise TruncatedRecord(
                    f"record body at offset {pos} extends past end of file"
                )
            pos += incl_len
            if incl_len == 0:
                skipped += 1
            else:
                count += 1
    return PcapFileInfo(
        byte_order=header.byte_order,
        version_major=header.version_major,
        version_minor=header.version_minor,
        snaplen=header.snaplen,
        link_type=header.link_type,
        packet_count=count,
        skipped_empty=skipped,
    )


def read_packets(path) -> Iterator[RawPacket]:
    """Yield packets in file order; zero-length records are skipped.

    On a record that extends past end of file, every complete packet is
    yielded first and TruncatedRecord is raised as the error marker.
    """
    with open(path, "rb") as f:
        header = _parse_global_header(f.read(GLOBAL_HEADER_LEN))
        record_fmt = header.prefix + "IIII"
        while True:
            hdr = f.read(RECORD_HEADER_LEN)
            if not hdr:
                return
            if len(hdr) < RECORD_HEADER_LEN:
                raise TruncatedRecord("record header extends past end of file")
            ts_sec, ts_frac, incl_len, orig_len = struct.unpack(record_fmt, hdr)
            _check_record_len(incl_len, header.snaplen)
            body = f.read(incl_len)
            if len(body) < incl_len:
                raise TruncatedRecord("record body extends past end of file")
            if incl_len == 0:
                continue
            ts_us = ts_frac // 1000 if header.nanos else ts_frac
            yield RawPacket(
                data=body,
                captured_len=incl_len,
                original_len=orig_len,
                timestamp_s=ts_sec,
                timestamp_us=ts_us,
                link_type=header.link_type,
            )


def write_pcap(packets: Iterable[RawPacket], link_type: int, path) -> None:
    """Write a classic pcap v2.4 little-endian file.

    Round trip is exact: read_packets on the written file reproduces every
    data field, captured_len, original_len and timestamp.
    """
    packets = list(packets)
    for i, p in enumerate(packets):
        if p.captured_len == 0:
            raise EmptyPacket(f"packet {i} has no bytes")
    snaplen = max([_DEFAULT_SNAPLEN] + [p.captured_len for p in packets])
    with open(path, "wb") as f:
        f.write(
            struct.pack("<IHHiIII", MAGIC_MICROS, 2, 4, 0, 0, snaplen, link_type)
        )
        for p in packets:
            f.write(
                struct.pack(
                    "<IIII",
                    p.timestamp_s & 0xFFFFFFFF,
                    p.timestamp_us & 0xFFFFFFFF,
                    p.captured_len,
                    p.original_len,
                )
            )
            f.write(p.data)
