"""Binary persistence of trained model banks.

File layout (little-endian):

    8 bytes   magic b"LPDPLMDL"
    uint32    format version
    uint64    header length L
    L bytes   UTF-8 JSON header: version, hyperparameters, pipeline, n, m, Q,
              class_names
    per class P (m x n), D (n x m), W (Q x m) as row-major float64
    32 bytes  SHA-256 of everything before it

Matrices are stored bit-exactly, so a loaded model classifies identically.
"""

import hashlib
import json
import os
from pathlib import Path
import struct

import numpy as np
import structlog
from pydantic import ValidationError

from src.errors import CorruptModel, ModelIOError, VersionMismatch
from src.models import ClassModel, FeaturePipelineConfig, Hyperparameters, TrainedModel

logger = structlog.get_logger()

MAGIC = b"LPDPLMDL"
FORMAT_VERSION = 1
_PREAMBLE = struct.Struct("<8sIQ")
_DIGEST_SIZE = 32
_FLOAT = np.dtype("<f8")


def encode_model(model: TrainedModel) -> bytes:
    """Serialize a model bank to bytes."""
    header = {
        "version": FORMAT_VERSION,
        "hyperparameters": model.hyperparameters.model_dump(mode="json"),
        "pipeline": model.pipeline.model_dump(mode="json"),
        "n": model.n,
        "m": model.m,
        "Q": model.num_classes,
        "class_names": list(model.class_names),
    }
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")

    parts = [_PREAMBLE.pack(MAGIC, FORMAT_VERSION, len(header_bytes)), header_bytes]
    for cm in model.class_models:
        for matrix in (cm.P, cm.D, cm.W):
            parts.append(np.ascontiguousarray(matrix, dtype=_FLOAT).tobytes())
    body = b"".join(parts)
    return body + hashlib.sha256(body).digest()


def decode_model(blob: bytes, source: str = "<bytes>") -> TrainedModel:
    """Parse bytes written by encode_model.

    Raises:
        CorruptModel: Bad magic, truncation, checksum or header mismatch
        VersionMismatch: Unsupported format version
    """
    if len(blob) < _PREAMBLE.size + _DIGEST_SIZE:
        raise CorruptModel(f"{source}: file too short ({len(blob)} bytes)")
    magic, version, header_len = _PREAMBLE.unpack_from(blob, 0)
    if magic != MAGIC:
        raise CorruptModel(f"{source}: not a model file")
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"{source}: format version {version}, expected {FORMAT_VERSION}")

    body, digest = blob[:-_DIGEST_SIZE], blob[-_DIGEST_SIZE:]
    if hashlib.sha256(body).digest() != digest:
        raise CorruptModel(f"{source}: checksum mismatch (truncated or modified)")

    offset = _PREAMBLE.size
    if offset + header_len > len(body):
        raise CorruptModel(f"{source}: header extends past end of file")
    try:
        header = json.loads(body[offset : offset + header_len].decode("utf-8"))
        hp = Hyperparameters.model_validate(header["hyperparameters"])
        pipeline = FeaturePipelineConfig.model_validate(header["pipeline"])
        n, m, q = int(header["n"]), int(header["m"]), int(header["Q"])
        class_names = [str(c) for c in header["class_names"]]
    except (ValueError, KeyError, TypeError, ValidationError) as e:
        raise CorruptModel(f"{source}: malformed header: {e}") from e
    offset += header_len

    shapes = ((m, n), (n, m), (q, m))
    expected = q * sum(r * c for r, c in shapes) * _FLOAT.itemsize
    if len(body) - offset != expected or len(class_names) != q:
        raise CorruptModel(
            f"{source}: payload has {len(body) - offset} bytes, header implies {expected}"
        )

    class_models = []
    for _ in range(q):
        matrices = []
        for rows, cols in shapes:
            count = rows * cols
            matrices.append(
                np.frombuffer(body, dtype=_FLOAT, count=count, offset=offset).reshape(rows, cols)
            )
            offset += count * _FLOAT.itemsize
        class_models.append(ClassModel(*matrices))

    return TrainedModel(
        class_models=class_models,
        class_names=class_names,
        hyperparameters=hp,
        pipeline=pipeline,
    )


def save_model(model: TrainedModel, path: Path) -> None:
    """Write a model bank; the target is replaced atomically.

    Raises:
        ModelIOError: If the file cannot be written
    """
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_bytes(encode_model(model))
        os.replace(tmp, path)
    except OSError as e:
        raise ModelIOError(f"cannot write model to {path}: {e}") from e
    logger.info("model_saved", path=str(path), classes=model.num_classes, n=model.n, m=model.m)


def load_model(path: Path) -> TrainedModel:
    """Read a model bank written by save_model.

    Raises:
        ModelIOError: If the file cannot be read
        CorruptModel: If the contents are damaged
        VersionMismatch: If the format version is unsupported
    """
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as e:
        raise ModelIOError(f"cannot read model {path}: {e}") from e
    model = decode_model(blob, source=str(path))
    logger.info("model_loaded", path=str(path), classes=model.num_classes)
    return model
