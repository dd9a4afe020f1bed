"""Class-partitioned feature matrices used for training and evaluation."""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from src.errors import DatasetError


@dataclass(frozen=True)
class ClassPartitionedDataset:
    """Feature columns grouped by class label.

    ``features`` is n x N with one sample per column; ``labels[j]`` is the
    0-based class index of column j. Per-class matrices keep the column order
    of ``features``.
    """

    features: np.ndarray
    labels: np.ndarray
    class_names: List[str]
    sample_ids: List[str] = field(default_factory=list)
    subject_ids: Optional[np.ndarray] = None
    repetitions: Optional[np.ndarray] = None
    splits: Optional[np.ndarray] = None
    # Mean preprocessing + feature extraction time per image, if measured
    extraction_ms_per_image: Optional[float] = None
    rejected: List[str] = field(default_factory=list)

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if features.ndim != 2:
            raise DatasetError(f"features must be n x N, got shape {features.shape}")
        if labels.shape != (features.shape[1],):
            raise DatasetError(
                f"labels length {labels.shape} does not match {features.shape[1]} columns"
            )
        if labels.size and (labels.min() < 0 or labels.max() >= len(self.class_names)):
            raise DatasetError("labels must index into class_names")
        if not np.isfinite(features).all():
            raise DatasetError("features contain non-finite values")
        sample_ids = list(self.sample_ids) or [f"sample-{j}" for j in range(labels.size)]
        if len(sample_ids) != labels.size:
            raise DatasetError("sample_ids length does not match column count")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_names", list(self.class_names))
        object.__setattr__(self, "sample_ids", sample_ids)
        for name in ("subject_ids", "repetitions", "splits"):
            values = getattr(self, name)
            if values is not None:
                values = np.asarray(values)
                if values.shape != labels.shape:
                    raise DatasetError(f"{name} length does not match column count")
                object.__setattr__(self, name, values)

    @property
    def n(self) -> int:
        """Feature length."""
        return self.features.shape[0]

    @property
    def num_classes(self) -> int:
        """Q."""
        return len(self.class_names)

    @property
    def num_samples(self) -> int:
        return self.features.shape[1]

    def class_indices(self, i: int) -> np.ndarray:
        """Column indices of class i, in dataset order."""
        return np.flatnonzero(self.labels == i)

    def class_count(self, i: int) -> int:
        """k_i."""
        return int(np.count_nonzero(self.labels == i))

    def class_matrix(self, i: int) -> np.ndarray:
        """X_i: n x k_i."""
        return self.features[:, self.class_indices(i)]

    def complement_matrix(self, i: int) -> np.ndarray:
        """X-bar_i: all columns of every other class, concatenated class by class."""
        blocks = [self.class_matrix(j) for j in range(self.num_classes) if j != i]
        if not blocks:
            return np.zeros((self.n, 0))
        return np.hstack(blocks)

    def label_matrix(self, i: int) -> np.ndarray:
        """H_i: Q x k_i with row i all ones."""
        return label_matrix(self.num_classes, i, self.class_count(i))

    def validate_for_training(self) -> None:
        """Raise DatasetError unless every class has at least one column."""
        if self.num_classes < 2:
            raise DatasetError(f"training needs at least 2 classes, got {self.num_classes}")
        empty = [self.class_names[i] for i in range(self.num_classes) if self.class_count(i) == 0]
        if empty:
            raise DatasetError(f"classes without training samples: {empty}")

    def subset(self, indices: Sequence[int]) -> "ClassPartitionedDataset":
        """Dataset restricted to the given columns (class list unchanged)."""
        idx = np.asarray(indices, dtype=np.int64)

        def pick(values):
            return None if values is None else values[idx]

        return ClassPartitionedDataset(
            features=self.features[:, idx],
            labels=self.labels[idx],
            class_names=self.class_names,
            sample_ids=[self.sample_ids[j] for j in idx],
            subject_ids=pick(self.subject_ids),
            repetitions=pick(self.repetitions),
            splits=pick(self.splits),
            extraction_ms_per_image=self.extraction_ms_per_image,
        )


def label_matrix(num_classes: int, i: int, k: int) -> np.ndarray:
    """One-hot label block for k samples of class i."""
    H = np.zeros((num_classes, k))
    H[i, :] = 1.0
    return H
