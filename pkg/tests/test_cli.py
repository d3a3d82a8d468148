import os
import shutil
import socket
import subprocess
import sys
import time
from pathlib import Path

import pytest
import requests
from requests.auth import HTTPDigestAuth

from termserver.cli import main

from conftest import FIXTURE_DIR, TINY_ISA


def run_cli(*argv, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "termserver.cli", *map(str, argv)],
        capture_output=True, text=True, input=stdin,
    )
    return proc


def ingest_args(out_path, extra=()):
    return [
        "ingest",
        "--concepts", FIXTURE_DIR / "concepts.tsv",
        "--descriptions", FIXTURE_DIR / "descriptions.tsv",
        "--relationships", FIXTURE_DIR / "relationships.tsv",
        "--isa", TINY_ISA,
        "--out", out_path,
        *extra,
    ]


def test_ingest_fixture(tmp_path):
    out = tmp_path / "tiny.idx"
    proc = run_cli(*ingest_args(out))
    assert proc.returncode == 0
    assert "10 concepts, 12 descriptions, 9 relationships, 0 issues" in proc.stdout
    assert out.exists()


def test_ingest_missing_isa_is_usage_error(tmp_path):
    proc = run_cli(
        "ingest",
        "--concepts", FIXTURE_DIR / "concepts.tsv",
        "--descriptions", FIXTURE_DIR / "descriptions.tsv",
        "--relationships", FIXTURE_DIR / "relationships.tsv",
        "--out", tmp_path / "x.idx",
    )
    assert proc.returncode == 2
    assert "usage" in proc.stderr.lower()


def test_ingest_bad_row_nonfatal(tmp_path):
    concepts = tmp_path / "concepts.tsv"
    concepts.write_bytes(
        (FIXTURE_DIR / "concepts.tsv").read_bytes() + b"abc\t1\n"
    )
    proc = run_cli(*ingest_args(tmp_path / "tiny.idx")[:2], concepts,
                   *ingest_args(tmp_path / "tiny.idx")[3:])
    assert proc.returncode == 0
    assert "concepts:12:BAD_ID" in proc.stderr
    assert "1 issues" in proc.stdout


def test_ingest_missing_file_is_io_error(tmp_path):
    proc = run_cli(
        "ingest",
        "--concepts", tmp_path / "nope.tsv",
        "--descriptions", FIXTURE_DIR / "descriptions.tsv",
        "--relationships", FIXTURE_DIR / "relationships.tsv",
        "--isa", TINY_ISA,
        "--out", tmp_path / "x.idx",
    )
    assert proc.returncode == 3


def test_ingest_dangling_is_data_error(tmp_path):
    rels = tmp_path / "relationships.tsv"
    rels.write_bytes(
        (FIXTURE_DIR / "relationships.tsv").read_bytes()
        + b"3999991\t1000051\t1000081\t9999999\t0\t1\n"
    )
    args = ingest_args(tmp_path / "x.idx")
    args[6] = rels
    proc = run_cli(*args)
    assert proc.returncode == 1
    assert "9999999" in proc.stderr


def test_unknown_subcommand_usage():
    assert run_cli("frobnicate").returncode == 2


def test_user_add_golden_and_replace(tmp_path):
    creds = tmp_path / "users.htdigest"
    proc = run_cli("user-add", "--credentials", creds, "--user", "mufasa",
                   "--realm", "testrealm@host.com", "--password-from-stdin",
                   stdin="Circle Of Life\n")
    assert proc.returncode == 0
    line = creds.read_text().strip()
    # ha1 golden computed with openssl md5 over mufasa:testrealm@host.com:Circle Of Life
    assert line == "mufasa:testrealm@host.com:0e1fb08424a409737859c06e495ebf00"

    proc = run_cli("user-add", "--credentials", creds, "--user", "mufasa",
                   "--realm", "testrealm@host.com", "--password-from-stdin",
                   stdin="New Password\n")
    assert proc.returncode == 0
    lines = creds.read_text().strip().splitlines()
    assert len(lines) == 1
    assert lines[0] != line


def test_user_add_bad_username(tmp_path):
    proc = run_cli("user-add", "--credentials", tmp_path / "c", "--user", "a:b",
                   "--realm", "r", "--password-from-stdin", stdin="pw\n")
    assert proc.returncode == 2


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture()
def tiny_index(tmp_path):
    out = tmp_path / "tiny.idx"
    assert run_cli(*ingest_args(out)).returncode == 0
    return out


def test_serve_health_and_shutdown(tiny_index, tmp_path):
    creds = tmp_path / "users.htdigest"
    run_cli("user-add", "--credentials", creds, "--user", "alice", "--realm", "r",
            "--password-from-stdin", stdin="pw\n")
    port = free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "termserver.cli", "serve", "--index", str(tiny_index),
         "--port", str(port), "--realm", "r", "--credentials", str(creds)],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True,
    )
    try:
        base = f"http://127.0.0.1:{port}"
        for _ in range(100):
            try:
                r = requests.get(f"{base}/api/health", timeout=1)
                break
            except requests.ConnectionError:
                time.sleep(0.05)
        else:
            pytest.fail("server never came up")
        assert r.status_code == 200
        r = requests.get(f"{base}/api/concepts/1000041", auth=HTTPDigestAuth("alice", "pw"))
        assert r.status_code == 200
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_serve_bad_index_checksum(tmp_path, tiny_index):
    data = bytearray(tiny_index.read_bytes())
    data[-1] ^= 0xFF
    bad = tmp_path / "bad.idx"
    bad.write_bytes(data)
    creds = tmp_path / "c.htdigest"
    creds.write_text("a:r:" + "0" * 32 + "\n")
    proc = run_cli("serve", "--index", bad, "--port", free_port(),
                   "--realm", "r", "--credentials", creds)
    assert proc.returncode == 3
    assert "checksum" in proc.stderr.lower()


def test_serve_port_zero_usage(tiny_index, tmp_path):
    creds = tmp_path / "c.htdigest"
    creds.write_text("a:r:" + "0" * 32 + "\n")
    proc = run_cli("serve", "--index", tiny_index, "--port", 0,
                   "--realm", "r", "--credentials", creds)
    assert proc.returncode == 2


def test_diagram_matches_golden(tiny_index, tmp_path):
    out = tmp_path / "d.dot"
    proc = run_cli("diagram", "--index", tiny_index, "--id", 1000041, "--out", out)
    assert proc.returncode == 0
    golden = Path(__file__).parent / "golden" / "concept_1000041.dot"
    assert out.read_bytes() == golden.read_bytes()


def test_diagram_unknown_id(tiny_index, tmp_path):
    proc = run_cli("diagram", "--index", tiny_index, "--id", 4242424,
                   "--out", tmp_path / "d.dot")
    assert proc.returncode == 1


def test_diagram_svg_without_renderer(tiny_index, tmp_path):
    proc = run_cli("diagram", "--index", tiny_index, "--id", 1000041,
                   "--out", tmp_path / "d.svg", "--format", "svg")
    assert proc.returncode == 2


def test_synth_deterministic_directories(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_cli("synth", "--concepts", 1000, "--seed", 42, "--out-dir", a).returncode == 0
    assert run_cli("synth", "--concepts", 1000, "--seed", 42, "--out-dir", b).returncode == 0
    for name in ("concepts.tsv", "descriptions.tsv", "relationships.tsv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_synth_n_below_one(tmp_path):
    assert run_cli("synth", "--concepts", 0, "--seed", 1, "--out-dir", tmp_path / "x").returncode == 2


def test_synth_single_concept(tmp_path):
    out = tmp_path / "one"
    assert run_cli("synth", "--concepts", 1, "--seed", 9, "--out-dir", out).returncode == 0
    rels = (out / "relationships.tsv").read_text().splitlines()
    assert len(rels) == 1  # header only
    concepts = (out / "concepts.tsv").read_text().splitlines()
    assert len(concepts) == 2
