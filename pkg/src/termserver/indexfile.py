"""Single-file persistent index for cold-start loading.

Layout: 8-byte magic ``SCTIDX01``, big-endian u32 format version, u64
payload length, 32-byte SHA-256 of the payload, then the payload (a
pickled column dump of the store's tables).  Any payload corruption is
caught by the checksum before decode; version bumps fail loudly.  Saves
are write-temp-then-rename so a serving process never observes a
half-written file.
"""

from __future__ import annotations

import hashlib
import os
import pickle
import struct

from .model import PositionIndex, TerminologyStore

MAGIC = b"SCTIDX01"
FORMAT_VERSION = 1
_HEADER = struct.Struct(">IQ")  # version, payload length


class IndexFileError(Exception):
    pass


class BadMagic(IndexFileError):
    pass


class VersionMismatch(IndexFileError):
    pass


class ChecksumMismatch(IndexFileError):
    pass


class TruncatedFile(IndexFileError):
    pass


def _pack_store(store: TerminologyStore) -> bytes:
    # concept table canonicalized by id so identical stores built from
    # shuffled input serialize identically; the relationship and
    # description tables keep file order (preferred-term semantics)
    payload = {
        "isa_type_id": store.isa_type_id,
        "active_by_id": dict(sorted(store._active_by_id.items())),
        "desc_cols": store._desc_cols,
        "desc_index": store._desc_index.as_tuple(),
        "rel_cols": store._rel_cols,
        "out_index": store._out_index.as_tuple(),
        "in_index": store._in_index.as_tuple(),
    }
    return pickle.dumps(payload, protocol=5)


def save_index(store: TerminologyStore, path: str) -> None:
    payload = _pack_store(store)
    digest = hashlib.sha256(payload).digest()
    blob = MAGIC + _HEADER.pack(FORMAT_VERSION, len(payload)) + digest + payload
    tmp = f"{path}.tmp.{os.getpid()}"
    try:
        with open(tmp, "wb") as f:
            f.write(blob)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def load_index(path: str) -> TerminologyStore:
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < len(MAGIC):
        raise TruncatedFile(f"{path}: shorter than magic")
    if data[: len(MAGIC)] != MAGIC:
        raise BadMagic(f"{path}: bad magic {data[:8]!r}")
    header_end = len(MAGIC) + _HEADER.size
    if len(data) < header_end + 32:
        raise TruncatedFile(f"{path}: truncated header")
    version, payload_len = _HEADER.unpack(data[len(MAGIC):header_end])
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"{path}: format version {version}, expected {FORMAT_VERSION}")
    digest = data[header_end:header_end + 32]
    payload = data[header_end + 32:]
    if len(payload) != payload_len:
        raise TruncatedFile(f"{path}: payload {len(payload)} bytes, header says {payload_len}")
    if hashlib.sha256(payload).digest() != digest:
        raise ChecksumMismatch(f"{path}: payload checksum mismatch")
    try:
        tables = pickle.loads(payload)
    except Exception as e:  # checksum passed, so this is a format bug
        raise IndexFileError(f"{path}: undecodable payload: {e}") from e

    return TerminologyStore._from_columns(
        tables["active_by_id"],
        tables["desc_cols"],
        PositionIndex(*tables["desc_index"]),
        tables["rel_cols"],
        PositionIndex(*tables["out_index"]),
        PositionIndex(*tables["in_index"]),
        tables["isa_type_id"],
    )
