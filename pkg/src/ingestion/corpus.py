"""Load a corpus manifest into a class-partitioned feature dataset."""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
import time
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog
from PIL import Image, UnidentifiedImageError

from src.config import settings
from src.errors import DecodeError, EmptyGlyph, ManifestError
from src.features import extract_features
from src.ingestion.idx import read_idx, to_uint8_images
from src.ingestion.manifest import CorpusManifest, SampleRecord, resolve_records
from src.models import ClassPartitionedDataset, FeaturePipelineConfig, GrayImage
from src.utils.experiment_logger import log_sample_rejected
from src.utils.metrics import MetricsCollector

logger = structlog.get_logger()


def read_image(path: Path, sample_id: Optional[str] = None) -> GrayImage:
    """Decode an image file to 8-bit grayscale.

    Raises:
        ManifestError: If the file does not exist
        DecodeError: If the file cannot be decoded
    """
    name = sample_id or str(path)
    if not Path(path).exists():
        raise ManifestError(f"{name}: file not found: {path}")
    try:
        with Image.open(path) as image:
            return GrayImage(np.asarray(image.convert("L")))
    except (UnidentifiedImageError, OSError, ValueError) as e:
        raise DecodeError(f"{name}: cannot decode {path}: {e}") from e


def decode_image(record: SampleRecord, idx_cache: Optional[Dict] = None) -> GrayImage:
    """Decode one record to 8-bit grayscale.

    Raises:
        ManifestError: If the file does not exist
        DecodeError: If the file cannot be decoded
    """
    if record.offset is not None:
        stack = (idx_cache or {}).get(record.path)
        if stack is None:
            stack = to_uint8_images(read_idx(record.path))
        if record.offset >= stack.shape[0]:
            raise DecodeError(f"{record.sample_id}: offset beyond {stack.shape[0]} images")
        return GrayImage(stack[record.offset])
    return read_image(record.path, record.sample_id)


def _featurize(
    record: SampleRecord,
    pipeline: FeaturePipelineConfig,
    idx_cache: Dict,
) -> Tuple[Optional[np.ndarray], float]:
    img = decode_image(record, idx_cache)
    started = time.perf_counter()
    try:
        features = extract_features(img, pipeline)
    except EmptyGlyph:
        log_sample_rejected(record.sample_id, "no foreground after binarization")
        return None, 0.0
    return features, 1000.0 * (time.perf_counter() - started)


def load_corpus(
    manifest: CorpusManifest,
    workers: Optional[int] = None,
    metrics: Optional[MetricsCollector] = None,
) -> ClassPartitionedDataset:
    """Decode, preprocess and featurize every record of a manifest.

    Blank images are dropped and listed in ``rejected``; all other failures
    abort the load with an error naming the record.

    Args:
        manifest: Corpus description
        workers: Thread count for feature extraction (default from settings)
        metrics: Optional collector for per-image extraction time

    Returns:
        Dataset with one column per accepted record, in manifest order

    Raises:
        ManifestError: Missing file or unresolvable layout
        DecodeError: Undecodable image
    """
    class_names, records = resolve_records(manifest)
    pipeline = manifest.pipeline_config()
    workers = max(1, workers or settings.workers)

    # Step 1: IDX stacks are decoded once and shared by their records
    idx_cache = {
        path: to_uint8_images(read_idx(path))
        for path in {r.path for r in records if r.offset is not None}
    }

    # Step 2: Preprocess and extract features
    logger.info("load_corpus_start", records=len(records), workers=workers, kind=pipeline.kind)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda r: _featurize(r, pipeline, idx_cache), records))
    else:
        results = [_featurize(r, pipeline, idx_cache) for r in records]

    # Step 3: Assemble accepted columns
    accepted: List[int] = [j for j, (features, _) in enumerate(results) if features is not None]
    rejected = [records[j].sample_id for j, (features, _) in enumerate(results) if features is None]
    if not accepted:
        raise ManifestError(f"no usable samples under {manifest.root}")

    timings = [results[j][1] for j in accepted]
    if metrics is not None:
        for ms in timings:
            metrics.record_histogram("extraction_ms_per_image", ms)
        metrics.increment_counter("samples_rejected", len(rejected))

    kept = [records[j] for j in accepted]

    def column(attr: str):
        values = [getattr(r, attr) for r in kept]
        if any(v is None for v in values):
            return None
        return np.asarray(values)

    dataset = ClassPartitionedDataset(
        features=np.column_stack([results[j][0] for j in accepted]),
        labels=np.asarray([r.class_index for r in kept], dtype=np.int64),
        class_names=class_names,
        sample_ids=[r.sample_id for r in kept],
        subject_ids=column("subject"),
        repetitions=column("repetition"),
        splits=column("split"),
        extraction_ms_per_image=float(np.mean(timings)),
        rejected=rejected,
    )
    logger.info(
        "load_corpus_complete",
        samples=dataset.num_samples,
        classes=dataset.num_classes,
        rejected=len(rejected),
        feature_length=dataset.n,
    )
    return dataset
