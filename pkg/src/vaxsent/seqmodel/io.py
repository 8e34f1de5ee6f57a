"""Binary model container.

Layout::

    b"VXSMODEL"                 8-byte magic
    uint32 LE                   format version
    uint64 LE                   header length in bytes
    header                      UTF-8 JSON, sorted keys
    payload                     raw little-endian arrays, back to back

The header lists every array with its dtype, shape, offset and length,
the SHA-256 of the payload, the vocabulary (with its content hash), the
seed, the training config and the history.
"""
from __future__ import annotations

import hashlib
import json
import struct
from pathlib import Path

import numpy as np

from vaxsent.seqmodel.lstm import LstmParams
from vaxsent.seqmodel.model import ModelKind, ModelState
from vaxsent.seqmodel.vocab import Vocab

MAGIC = b"VXSMODEL"
FORMAT_VERSION = 1
_PREFIX = struct.Struct("<8sIQ")


class ModelFormatError(ValueError):
    pass


def _arrays(state: ModelState) -> dict[str, np.ndarray]:
    arrays = dict(state.parameters())
    for name in arrays.copy():
        if name in state.optimizer_cache:
            arrays[f"opt.{name}"] = state.optimizer_cache[name]
    return arrays


def dumps(state: ModelState) -> bytes:
    entries, chunks, offset = [], [], 0
    for name, arr in _arrays(state).items():
        le = np.ascontiguousarray(arr, dtype=arr.dtype.newbyteorder("<"))
        raw = le.tobytes()
        entries.append({"name": name, "dtype": le.dtype.str, "shape": list(arr.shape),
                        "offset": offset, "nbytes": len(raw)})
        chunks.append(raw)
        offset += len(raw)
    payload = b"".join(chunks)
    header = {
        "kind": state.kind.value,
        "arrays": entries,
        "payload_sha256": hashlib.sha256(payload).hexdigest(),
        "payload_bytes": len(payload),
        "seed": state.seed,
        "config": state.config,
        "history": state.history,
        "vocab": None if state.vocab is None else {
            "tokens": state.vocab.tokens, "max_size": state.vocab.max_size,
            "hash": state.vocab.content_hash()},
    }
    head = json.dumps(header, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return _PREFIX.pack(MAGIC, FORMAT_VERSION, len(head)) + head + payload


def save_model(state: ModelState, path: str | Path) -> None:
    Path(path).write_bytes(dumps(state))


def loads(blob: bytes) -> ModelState:
    if len(blob) < _PREFIX.size:
        raise ModelFormatError("file too short to be a model")
    magic, version, head_len = _PREFIX.unpack_from(blob)
    if magic != MAGIC:
        raise ModelFormatError("bad magic; not a model file")
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported format version {version} (expected {FORMAT_VERSION})")
    start = _PREFIX.size
    if len(blob) < start + head_len:
        raise ModelFormatError("truncated header")
    try:
        header = json.loads(blob[start:start + head_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"corrupt header: {exc}") from exc
    payload = blob[start + head_len:]
    if len(payload) != header["payload_bytes"]:
        raise ModelFormatError(
            f"payload is {len(payload)} bytes, header says {header['payload_bytes']} (truncated?)")
    if hashlib.sha256(payload).hexdigest() != header["payload_sha256"]:
        raise ModelFormatError("payload checksum mismatch")

    arrays = {}
    for e in header["arrays"]:
        dt = np.dtype(e["dtype"])
        n = int(np.prod(e["shape"], dtype=np.int64))
        if n * dt.itemsize != e["nbytes"]:
            raise ModelFormatError(f"array {e['name']}: shape does not match byte length")
        raw = payload[e["offset"]:e["offset"] + e["nbytes"]]
        arrays[e["name"]] = np.frombuffer(raw, dtype=dt).reshape(e["shape"]).astype(
            dt.newbyteorder("="), copy=True)

    def cell(prefix):
        return LstmParams(**{k.split(".", 1)[1]: v for k, v in arrays.items()
                             if k.startswith(prefix + ".")})

    vocab = None
    if header["vocab"] is not None:
        vocab = Vocab(tokens=header["vocab"]["tokens"], max_size=header["vocab"]["max_size"])
        if vocab.content_hash() != header["vocab"]["hash"]:
            raise ModelFormatError("vocab hash mismatch inside model file")
    kind = ModelKind(header["kind"])
    try:
        state = ModelState(
            kind=kind, embedding=arrays["embedding"], forward_cell=cell("fwd"),
            backward_cell=cell("bwd") if kind is ModelKind.BILSTM else None,
            W_out=arrays["W_out"], b_out=arrays["b_out"], vocab=vocab, seed=header["seed"],
            config=header["config"], history=header["history"],
            optimizer_cache={k[4:]: v for k, v in arrays.items() if k.startswith("opt.")},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"inconsistent model arrays: {exc}") from exc
    return state


def load_model(path: str | Path) -> ModelState:
    return loads(Path(path).read_bytes())
