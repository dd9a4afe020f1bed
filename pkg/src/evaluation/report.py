"""Evaluation results and their aggregation."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.errors import EmptyReport


@dataclass(frozen=True)
class FoldResult:
    """Outcome of one fold."""

    fold_index: int
    n_train: int
    n_test: int
    n_correct: int
    confusion: np.ndarray
    train_seconds: float
    classify_ms_per_image: float

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n_test if self.n_test else 0.0


@dataclass
class EvalReport:
    """Per-fold accuracies, pooled confusion matrix and timings.

    Confusion rows are target classes and columns are predicted classes.
    Folds may be added in any order; aggregates do not depend on it.
    """

    scheme: str
    class_names: List[str]
    fold_results: List[FoldResult] = field(default_factory=list)
    feature_ms_per_image: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def add_fold(self, result: FoldResult) -> None:
        self.fold_results.append(result)
        self.fold_results.sort(key=lambda r: r.fold_index)

    @property
    def num_folds(self) -> int:
        return len(self.fold_results)

    def _require_folds(self) -> None:
        if not self.fold_results:
            raise EmptyReport(f"{self.scheme} evaluation has no folds to aggregate")

    @property
    def confusion(self) -> np.ndarray:
        """Q x Q counts summed over folds."""
        self._require_folds()
        return np.sum([r.confusion for r in self.fold_results], axis=0).astype(np.int64)

    @property
    def fold_accuracies(self) -> List[float]:
        return [r.accuracy for r in self.fold_results]

    @property
    def pooled_accuracy(self) -> float:
        """trace(confusion) / total test count; the headline number."""
        confusion = self.confusion
        total = confusion.sum()
        return float(np.trace(confusion) / total) if total else 0.0

    @property
    def mean_fold_accuracy(self) -> float:
        self._require_folds()
        return float(np.mean(self.fold_accuracies))

    @property
    def classify_ms_per_image(self) -> float:
        """Test-count weighted mean classification time."""
        self._require_folds()
        total = sum(r.n_test for r in self.fold_results)
        if not total:
            return 0.0
        return sum(r.classify_ms_per_image * r.n_test for r in self.fold_results) / total

    def most_confused_pair(self) -> Optional[Tuple[str, str, int]]:
        """(target, output, count) of the largest off-diagonal cell, or None."""
        confusion = self.confusion.copy()
        np.fill_diagonal(confusion, 0)
        if confusion.max() == 0:
            return None
        target, output = np.unravel_index(int(np.argmax(confusion)), confusion.shape)
        return self.class_names[target], self.class_names[output], int(confusion[target, output])

    def summary(self) -> Dict[str, Any]:
        """Machine-readable summary including timings."""
        pair = self.most_confused_pair()
        return {
            "scheme": self.scheme,
            "folds": self.num_folds,
            "n_test": int(self.confusion.sum()),
            "pooled_accuracy": self.pooled_accuracy,
            "mean_fold_accuracy": self.mean_fold_accuracy,
            "fold_accuracies": self.fold_accuracies,
            "feature_ms_per_image": self.feature_ms_per_image,
            "classify_ms_per_image": self.classify_ms_per_image,
            "train_seconds": [r.train_seconds for r in self.fold_results],
            "most_confused_pair": list(pair) if pair else None,
            "class_names": list(self.class_names),
            "notes": list(self.notes),
        }
