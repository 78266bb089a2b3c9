import random
import struct
import subprocess

import pytest

# pcap writing is done by hand here: the trainer talks to the dataset
# pipeline only through its file formats and CLI.

PCAP_GLOBAL = struct.pack("<IHHiIII", 0xA1B2C3D4, 2, 4, 0, 0, 65535, 1)


def write_pcap(path, payloads):
    with open(path, "wb") as f:
        f.write(PCAP_GLOBAL)
        for i, data in enumerate(payloads):
            f.write(struct.pack("<IIII", i, 0, len(data), len(data)))
            f.write(data)


def run_cli(*argv):
    proc = subprocess.run(
        ["packetvision", *argv], capture_output=True, text=True
    )
    assert proc.returncode == 0, f"packetvision {argv} failed: {proc.stderr}"
    return proc.stdout


@pytest.fixture(scope="session")
def separability_dataset(tmp_path_factory):
    """Two synthetic traffic classes with disjoint byte-value ranges,
    200 packets each, built and split (k=2) by the dataset CLI."""
    root = tmp_path_factory.mktemp("separable")
    rnd = random.Random(1234)
    low = [
        bytes(rnd.randrange(0, 96) for _ in range(rnd.randint(64, 256)))
        for _ in range(200)
    ]
    high = [
        bytes(rnd.randrange(160, 256) for _ in range(rnd.randint(64, 256)))
        for _ in range(200)
    ]
    write_pcap(root / "low.pcap", low)
    write_pcap(root / "high.pcap", high)
    config = root / "build.toml"
    config.write_text(
        'output_dir = "dataset"\n'
        "global_seed = 7\n"
        "lambda = 8.0\n"
        '[[input]]\npath = "low.pcap"\nlabel = "Low"\n'
        '[[input]]\npath = "high.pcap"\nlabel = "High"\n'
    )
    run_cli("build", "--config", str(config))
    data_root = root / "dataset"
    run_cli(
        "split",
        "--manifest", str(data_root / "manifest.csv"),
        "--k", "2",
        "--seed", "3",
        "--out", str(root / "splits"),
    )
    return {
        "data_root": data_root,
        "fold_dir": root / "splits" / "fold_0",
    }
