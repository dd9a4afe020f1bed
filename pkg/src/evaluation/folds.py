"""Fold plans for the validation protocols.

- conventional: stratified k-fold over all columns, seeded shuffle
- between_subject: leave one subject (writer) out
- within_subject: fold t tests the t-th repetition of every subject
- holdout: the fixed train/test split recorded by the corpus
- resubstitution: one fold whose test set is the training set
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import structlog
from sklearn.model_selection import LeaveOneGroupOut, StratifiedKFold

from src.config import settings
from src.errors import MissingMetadata
from src.models import ClassPartitionedDataset

logger = structlog.get_logger()

SCHEMES = ("conventional", "within_subject", "between_subject", "holdout", "resubstitution")
SCHEME_ALIASES = {"within": "within_subject", "between": "between_subject"}


@dataclass(frozen=True)
class FoldPlan:
    """Train/test column-index pairs for one validation scheme."""

    scheme: str
    folds: List[Tuple[np.ndarray, np.ndarray]]
    notes: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.folds)


def _repetition_indices(dataset: ClassPartitionedDataset, seed: int, notes: List[str]) -> np.ndarray:
    if dataset.repetitions is not None:
        return np.asarray(dataset.repetitions)
    if dataset.subject_ids is None:
        raise MissingMetadata("within_subject folds need repetition indices or subject ids")

    # Ordinal of each sample within its (subject, class) group after a seeded shuffle
    rng = np.random.default_rng(seed)
    order = rng.permutation(dataset.num_samples)
    repetitions = np.empty(dataset.num_samples, dtype=np.int64)
    seen = {}
    for j in order:
        key = (dataset.subject_ids[j], int(dataset.labels[j]))
        repetitions[j] = seen.get(key, 0)
        seen[key] = repetitions[j] + 1
    notes.append(f"repetition index derived from per-subject ordinal after shuffle (seed={seed})")
    return repetitions


def make_folds(
    dataset: ClassPartitionedDataset,
    scheme: str,
    k_or_reps: Optional[int] = None,
    seed: int = 0,
) -> FoldPlan:
    """Build the fold plan for a validation scheme.

    Args:
        dataset: Full dataset
        scheme: One of SCHEMES (``within``/``between`` accepted as aliases)
        k_or_reps: Folds for conventional CV (default from settings); for
            within_subject, optionally limits the plan to the first k
            repetition indices
        seed: Shuffle seed

    Returns:
        Fold plan with sorted index arrays

    Raises:
        MissingMetadata: If the scheme needs ids the dataset lacks
        ValueError: For an unknown scheme
    """
    scheme = SCHEME_ALIASES.get(scheme, scheme)
    if scheme not in SCHEMES:
        raise ValueError(f"unknown fold scheme: {scheme}")

    columns = np.arange(dataset.num_samples)
    notes: List[str] = []
    folds: List[Tuple[np.ndarray, np.ndarray]] = []

    if scheme == "conventional":
        k = k_or_reps or settings.folds
        splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
        folds = [(train, test) for train, test in splitter.split(columns, dataset.labels)]

    elif scheme == "between_subject":
        if dataset.subject_ids is None:
            raise MissingMetadata("between_subject folds need subject ids")
        groups = np.asarray(dataset.subject_ids)
        folds = list(LeaveOneGroupOut().split(columns, dataset.labels, groups))

    elif scheme == "within_subject":
        repetitions = _repetition_indices(dataset, seed, notes)
        folds = list(LeaveOneGroupOut().split(columns, dataset.labels, repetitions))
        if k_or_reps:
            folds = folds[:k_or_reps]

    elif scheme == "holdout":
        if dataset.splits is None:
            raise MissingMetadata("holdout evaluation needs a train/test split per sample")
        splits = np.asarray(dataset.splits).astype(str)
        folds = [(np.flatnonzero(splits == "train"), np.flatnonzero(splits == "test"))]

    else:
        folds = [(columns, columns)]

    folds = [(np.sort(train), np.sort(test)) for train, test in folds]
    logger.info("fold_plan_built", scheme=scheme, folds=len(folds), samples=dataset.num_samples)
    return FoldPlan(scheme=scheme, folds=folds, notes=notes)
