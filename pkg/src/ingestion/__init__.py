"""Corpus loading and model persistence."""

from src.ingestion.manifest import (
    CorpusManifest,
    IdxFiles,
    SampleRecord,
    load_manifest,
    resolve_records,
)
from src.ingestion.idx import read_idx, to_uint8_images
from src.ingestion.corpus import decode_image, load_corpus, read_image
from src.ingestion.model_store import (
    FORMAT_VERSION,
    decode_model,
    encode_model,
    load_model,
    save_model,
)

__all__ = [
    "CorpusManifest",
    "IdxFiles",
    "SampleRecord",
    "load_manifest",
    "resolve_records",
    "read_idx",
    "to_uint8_images",
    "decode_image",
    "load_corpus",
    "read_image",
    "FORMAT_VERSION",
    "decode_model",
    "encode_model",
    "load_model",
    "save_model",
]
