import random
import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packetvision import (
    BadMagic,
    EmptyPacket,
    RawPacket,
    RecordTooLarge,
    Truncated,
    TruncatedRecord,
    UnsupportedVersion,
    open_pcap,
    read_packets,
    write_pcap,
)

LE_GLOBAL = struct.pack("<IHHiIII", 0xA1B2C3D4, 2, 4, 0, 0, 65535, 1)
BE_GLOBAL = struct.pack(">IHHiIII", 0xA1B2C3D4, 2, 4, 0, 0, 65535, 1)


def record_le(data, ts_sec=0, ts_frac=0, orig_len=None):
    orig_len = len(data) if orig_len is None else orig_len
    return struct.pack("<IIII", ts_sec, ts_frac, len(data), orig_len) + data


def test_global_header_only_is_empty_capture(tmp_path):
    path = tmp_path / "empty.pcap"
    path.write_bytes(LE_GLOBAL)
    info = open_pcap(path)
    assert info.packet_count == 0
    assert info.byte_order == "little"
    assert (info.version_major, info.version_minor) == (2, 4)
    assert info.snaplen == 65535
    assert info.link_type == 1
    assert list(read_packets(path)) == []


def test_hand_encoded_single_record(tmp_path):
    # One 16-byte record header plus 4 data bytes, assembled by hand.
    path = tmp_path / "one.pcap"
    path.write_bytes(LE_GLOBAL + record_le(b"\xde\xad\xbe\xef", ts_sec=7, ts_frac=42))
    assert open_pcap(path).packet_count == 1
    [pkt] = read_packets(path)
    assert pkt.data == b"\xde\xad\xbe\xef"
    assert pkt.captured_len == 4
    assert pkt.original_len == 4
    assert (pkt.timestamp_s, pkt.timestamp_us) == (7, 42)
    assert pkt.link_type == 1


def test_pcapng_magic_is_rejected(tmp_path):
    path = tmp_path / "block.pcapng"
    path.write_bytes(bytes.fromhex("0a0d0d0a") + bytes(28))
    with pytest.raises(BadMagic):
        open_pcap(path)


def test_short_file_is_truncated(tmp_path):
    path = tmp_path / "short.pcap"
    path.write_bytes(LE_GLOBAL[:10])
    with pytest.raises(Truncated):
        open_pcap(path)


def test_unsupported_version(tmp_path):
    path = tmp_path / "v13.pcap"
    path.write_bytes(struct.pack("<IHHiIII", 0xA1B2C3D4, 1, 3, 0, 0, 65535, 1))
    with pytest.raises(UnsupportedVersion):
        open_pcap(path)


def test_truncated_capture_record_fields(tmp_path):
    # incl_len 10 but orig_len 1514: a snaplen-truncated capture.
    path = tmp_path / "cut.pcap"
    path.write_bytes(LE_GLOBAL + record_le(b"0123456789", orig_len=1514))
    [pkt] = read_packets(path)
    assert pkt.captured_len == 10
    assert pkt.original_len == 1514


def test_zero_length_records_are_skipped_and_counted(tmp_path):
    path = tmp_path / "gaps.pcap"
    body = record_le(b"a") + record_le(b"") + record_le(b"bc") + record_le(b"")
    path.write_bytes(LE_GLOBAL + body)
    info = open_pcap(path)
    assert info.packet_count == 2
    assert info.skipped_empty == 2
    assert [p.data for p in read_packets(path)] == [b"a", b"bc"]


def test_truncated_record_yields_prefix_then_raises(tmp_path):
    path = tmp_path / "torn.pcap"
    good = record_le(b"ok")
    torn = struct.pack("<IIII", 0, 0, 100, 100) + b"only-ten-b"
    path.write_bytes(LE_GLOBAL + good + torn)
    received = []
    with pytest.raises(TruncatedRecord):
        for pkt in read_packets(path):
            received.append(pkt.data)
    assert received == [b"ok"]
    with pytest.raises(TruncatedRecord):
        open_pcap(path)


def test_record_too_large(tmp_path):
    path = tmp_path / "huge.pcap"
    path.write_bytes(LE_GLOBAL + struct.pack("<IIII", 0, 0, 300_000, 300_000))
    with pytest.raises(RecordTooLarge):
        open_pcap(path)


def test_big_endian_and_little_endian_parse_identically(tmp_path):
    payloads = [b"\x01\x02\x03", b"\xff" * 9]
    le = tmp_path / "le.pcap"
    le.write_bytes(LE_GLOBAL + b"".join(record_le(p, ts_sec=i) for i, p in enumerate(payloads)))
    be = tmp_path / "be.pcap"
    be_records = b"".join(
        struct.pack(">IIII", i, 0, len(p), len(p)) + p for i, p in enumerate(payloads)
    )
    be.write_bytes(BE_GLOBAL + be_records)
    assert open_pcap(be).byte_order == "big"
    assert list(read_packets(le)) == list(read_packets(be))


def test_nanosecond_magic_normalized_to_micros(tmp_path):
    path = tmp_path / "nanos.pcap"
    header = struct.pack("<IHHiIII", 0xA1B23C4D, 2, 4, 0, 0, 65535, 1)
    path.write_bytes(header + struct.pack("<IIII", 5, 123_456_789, 1, 1) + b"x")
    [pkt] = read_packets(path)
    assert pkt.timestamp_s == 5
    assert pkt.timestamp_us == 123_456


def test_write_then_read_roundtrip(tmp_path):
    packets = [
        RawPacket(bytes(range(1, 17)), timestamp_s=100, timestamp_us=999_999),
        RawPacket(b"\x00", original_len=60),
        RawPacket(b"\xab" * 1514),
    ]
    path = tmp_path / "rt.pcap"
    write_pcap(packets, link_type=1, path=path)
    assert list(read_packets(path)) == packets
    assert open_pcap(path).packet_count == 3


def test_write_zero_packets_gives_header_only_file(tmp_path):
    path = tmp_path / "none.pcap"
    write_pcap([], link_type=1, path=path)
    assert path.stat().st_size == 24
    assert open_pcap(path).packet_count == 0


def test_write_rejects_empty_packet(tmp_path):
    with pytest.raises(EmptyPacket):
        write_pcap([RawPacket(b"", original_len=0)], link_type=1, path=tmp_path / "x.pcap")


def test_thousand_random_packets_roundtrip(tmp_path):
    rnd = random.Random(0xC0FFEE)
    packets = [
        RawPacket(
            rnd.randbytes(rnd.randint(1, 1514)),
            timestamp_s=rnd.randrange(2**31),
            timestamp_us=rnd.randrange(1_000_000),
        )
        for _ in range(1000)
    ]
    path = tmp_path / "many.pcap"
    write_pcap(packets, link_type=1, path=path)
    assert list(read_packets(path)) == packets


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.binary(min_size=1, max_size=200),
        min_size=0,
        max_size=20,
    )
)
def test_roundtrip_property(tmp_path_factory, payloads):
    tmp = tmp_path_factory.mktemp("pcap")
    packets = [RawPacket(p) for p in payloads]
    path = tmp / "prop.pcap"
    write_pcap(packets, link_type=1, path=path)
    assert [p.data for p in read_packets(path)] == payloads


def test_rawpacket_invariants():
    with pytest.raises(ValueError):
        RawPacket(b"abc", captured_len=2)
    with pytest.raises(ValueError):
        RawPacket(b"abc", original_len=2)
    pkt = RawPacket(b"abc")
    assert pkt.captured_len == 3
    assert pkt.original_len == 3
