"""Versioned binary checkpoint container.

Layout::

    MAGIC (8 bytes) | version (uint32 LE) | header length (uint32 LE)
    | JSON header | raw little-endian tensor bytes

The header carries free-form metadata, the inventory digests the model was
trained against and, per tensor, its name, dtype, shape and byte offset.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import Any, Mapping

import numpy as np
import torch

MAGIC = b"UNIFRONT"
VERSION = 1


class CheckpointError(ValueError):
    pass


def save_checkpoint(
    path: str | Path,
    state: Mapping[str, torch.Tensor],
    metadata: Mapping[str, Any],
    inventory_digests: Mapping[str, str],
) -> None:
    entries = []
    blobs = []
    offset = 0
    for name, tensor in state.items():
        arr = np.ascontiguousarray(tensor.detach().cpu().numpy())
        arr = arr.astype(arr.dtype.newbyteorder("<"), copy=False)
        data = arr.tobytes()
        entries.append({"name": name, "dtype": arr.dtype.str, "shape": list(arr.shape), "offset": offset, "nbytes": len(data)})
        blobs.append(data)
        offset += len(data)
    header = json.dumps(
        {"metadata": dict(metadata), "inventories": dict(inventory_digests), "tensors": entries},
        sort_keys=True,
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", VERSION, len(header)))
        fh.write(header)
        for blob in blobs:
            fh.write(blob)


def load_checkpoint(
    path: str | Path, expected_digests: Mapping[str, str] | None = None
) -> tuple[dict[str, torch.Tensor], dict[str, Any]]:
    """Read a checkpoint, refusing it if any expected inventory digest differs."""
    raw = Path(path).read_bytes()
    if raw[: len(MAGIC)] != MAGIC:
        raise CheckpointError(f"{path}: not a unifront checkpoint")
    version, hlen = struct.unpack_from("<II", raw, len(MAGIC))
    if version != VERSION:
        raise CheckpointError(f"{path}: unsupported checkpoint version {version}")
    start = len(MAGIC) + 8
    header = json.loads(raw[start : start + hlen].decode("utf-8"))
    body = memoryview(raw)[start + hlen :]
    for name, digest in (expected_digests or {}).items():
        found = header["inventories"].get(name)
        if found != digest:
            raise CheckpointError(f"{path}: inventory {name!r} mismatch (checkpoint {found}, current {digest})")
    state = {}
    for e in header["tensors"]:
        arr = np.frombuffer(body[e["offset"] : e["offset"] + e["nbytes"]], dtype=np.dtype(e["dtype"]))
        state[e["name"]] = torch.from_numpy(arr.reshape(e["shape"]).copy())
    meta = dict(header["metadata"])
    meta["inventories"] = header["inventories"]
    return state, meta
