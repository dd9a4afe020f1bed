"""Corpus manifests: where the images are and how to read them.

A manifest is a JSON document, for example::

    {
      "root": "data/chinese",
      "layout": "class_dirs",
      "classes": ["0", "1", "2"],
      "filename_pattern": "^(?P<subject>[^_]+)_(?P<repetition>\\\\d+)$",
      "pipeline": {"kind": "hog", "preprocess": "crop"}
    }

Layouts:
- class_dirs: one sub-directory per class holding PNG/PGM/BMP/JPG files;
  subject and repetition are parsed from the file stem when the pattern
  matches
- csv_flat: ``index_file`` (relative to root) with columns path, label and
  optionally subject, repetition, split
- idx_pair: IDX image/label file pairs for the train and test splits
"""

import json
import re
from pathlib import Path
from typing import List, Literal, Optional

import pandas as pd
import structlog
from pydantic import BaseModel, ValidationError

from src.errors import ManifestError
from src.models import FeaturePipelineConfig

logger = structlog.get_logger()

IMAGE_SUFFIXES = {".png", ".pgm", ".bmp", ".jpg", ".jpeg", ".tif", ".tiff", ".gif"}
DEFAULT_FILENAME_PATTERN = r"^(?P<subject>[^_]+)_(?P<repetition>\d+)$"


class IdxFiles(BaseModel):
    """IDX file names relative to the manifest root."""

    train_images: str
    train_labels: str
    test_images: Optional[str] = None
    test_labels: Optional[str] = None


class SampleRecord(BaseModel):
    """One image of the corpus."""

    sample_id: str
    path: Path
    class_index: int
    offset: Optional[int] = None
    subject: Optional[str] = None
    repetition: Optional[int] = None
    split: Optional[str] = None


class CorpusManifest(BaseModel):
    """Description of an image corpus on disk."""

    root: Path
    layout: Literal["class_dirs", "idx_pair", "csv_flat"]
    classes: Optional[List[str]] = None
    filename_pattern: str = DEFAULT_FILENAME_PATTERN
    index_file: Optional[str] = None
    idx: Optional[IdxFiles] = None
    pipeline: Optional[FeaturePipelineConfig] = None

    def pipeline_config(self) -> FeaturePipelineConfig:
        """Configured pipeline, defaulting to resize_only for IDX corpora."""
        if self.pipeline is not None:
            return self.pipeline
        if self.layout == "idx_pair":
            return FeaturePipelineConfig(preprocess="resize_only")
        return FeaturePipelineConfig()


def load_manifest(path: Path) -> CorpusManifest:
    """Read a JSON manifest; a relative root is resolved against the file.

    Raises:
        ManifestError: If the file is missing or invalid
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
        manifest = CorpusManifest.model_validate(data)
    except FileNotFoundError as e:
        raise ManifestError(f"manifest not found: {path}") from e
    except (json.JSONDecodeError, ValidationError) as e:
        raise ManifestError(f"invalid manifest {path}: {e}") from e

    if not manifest.root.is_absolute():
        manifest = manifest.model_copy(update={"root": (path.parent / manifest.root).resolve()})
    return manifest


def _class_dirs_records(manifest: CorpusManifest) -> tuple:
    root = manifest.root
    if not root.is_dir():
        raise ManifestError(f"corpus root is not a directory: {root}")
    class_names = manifest.classes or sorted(p.name for p in root.iterdir() if p.is_dir())
    pattern = re.compile(manifest.filename_pattern)

    records = []
    for index, name in enumerate(class_names):
        class_dir = root / name
        if not class_dir.is_dir():
            raise ManifestError(f"class directory missing: {class_dir}")
        for file in sorted(class_dir.iterdir()):
            if file.suffix.lower() not in IMAGE_SUFFIXES:
                continue
            match = pattern.match(file.stem)
            groups = match.groupdict() if match else {}
            repetition = groups.get("repetition")
            records.append(
                SampleRecord(
                    sample_id=f"{name}/{file.name}",
                    path=file,
                    class_index=index,
                    subject=groups.get("subject"),
                    repetition=int(repetition) if repetition is not None else None,
                    split=groups.get("split"),
                )
            )
    return class_names, records


def _csv_flat_records(manifest: CorpusManifest) -> tuple:
    if not manifest.index_file:
        raise ManifestError("csv_flat layout needs index_file")
    index_path = manifest.root / manifest.index_file
    try:
        table = pd.read_csv(index_path, dtype={"path": str, "label": str, "subject": str})
    except FileNotFoundError as e:
        raise ManifestError(f"index file not found: {index_path}") from e
    for column in ("path", "label"):
        if column not in table.columns:
            raise ManifestError(f"index file {index_path} lacks column '{column}'")

    labels = table["label"].astype(str)
    class_names = manifest.classes or sorted(labels.unique())
    lookup = {name: i for i, name in enumerate(class_names)}

    records = []
    for row_number, row in table.iterrows():
        label = str(row["label"])
        if label not in lookup:
            raise ManifestError(f"record {row_number} ({row['path']}): unknown class '{label}'")
        repetition = row.get("repetition")
        subject = row.get("subject")
        split = row.get("split")
        records.append(
            SampleRecord(
                sample_id=str(row["path"]),
                path=manifest.root / str(row["path"]),
                class_index=lookup[label],
                subject=None if pd.isna(subject) else str(subject),
                repetition=None if pd.isna(repetition) else int(repetition),
                split=None if pd.isna(split) else str(split),
            )
        )
    return class_names, records


def _idx_pair_records(manifest: CorpusManifest) -> tuple:
    from src.ingestion.idx import read_idx

    if manifest.idx is None:
        raise ManifestError("idx_pair layout needs the idx file names")

    pairs = [("train", manifest.idx.train_images, manifest.idx.train_labels)]
    if manifest.idx.test_images and manifest.idx.test_labels:
        pairs.append(("test", manifest.idx.test_images, manifest.idx.test_labels))

    raw = []
    for split, images_name, labels_name in pairs:
        images_path = manifest.root / images_name
        labels = read_idx(manifest.root / labels_name).astype(int).ravel()
        images = read_idx(images_path)
        if images.shape[0] != labels.size:
            raise ManifestError(
                f"{images_path}: {images.shape[0]} images but {labels.size} labels"
            )
        raw.append((split, images_path, labels))

    present = sorted({int(v) for _, _, labels in raw for v in labels})
    if manifest.classes:
        # Named classes are indexed by label value
        if min(present) < 0 or max(present) >= len(manifest.classes):
            raise ManifestError(
                f"{len(manifest.classes)} class names for label values {present[0]}..{present[-1]}"
            )
        class_names = list(manifest.classes)
        lookup = {v: v for v in present}
    else:
        class_names = [str(v) for v in present]
        lookup = {v: i for i, v in enumerate(present)}

    records = []
    for split, images_path, labels in raw:
        for offset, label in enumerate(labels):
            records.append(
                SampleRecord(
                    sample_id=f"{images_path.name}:{offset}",
                    path=images_path,
                    offset=offset,
                    class_index=lookup[int(label)],
                    split=split,
                )
            )
    return class_names, records


def resolve_records(manifest: CorpusManifest) -> tuple:
    """Class names and sample records, in corpus order.

    Returns:
        (class_names, records)

    Raises:
        ManifestError: If the layout cannot be resolved
    """
    if manifest.layout == "class_dirs":
        class_names, records = _class_dirs_records(manifest)
    elif manifest.layout == "csv_flat":
        class_names, records = _csv_flat_records(manifest)
    else:
        class_names, records = _idx_pair_records(manifest)

    if len(class_names) < 1:
        raise ManifestError(f"no classes found under {manifest.root}")

    logger.info(
        "manifest_resolved",
        layout=manifest.layout,
        classes=len(class_names),
        records=len(records),
    )
    return class_names, records
