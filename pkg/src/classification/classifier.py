"""Residual-plus-label classification with trained dictionary pairs.

For class i the score of a vector x is

    ||x - D_i P_i x||^2 + w * ||h_i - W_i P_i x||^2

where h_i is the one-hot vector of class i and w the label weight (1 by
default, 0 for the residual-only baseline). The label is the argmin over
classes, lowest index on ties.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import structlog

from src.errors import DimensionMismatch
from src.models import TrainedModel

logger = structlog.get_logger()


@dataclass(frozen=True)
class ClassScore:
    """Score of one class; ``label_error`` already includes the label weight."""

    class_index: int
    residual: float
    label_error: float
    total: float


def _label_weight(model: TrainedModel, label_weight: Optional[float]) -> float:
    return model.hyperparameters.label_weight if label_weight is None else label_weight


def _check_vector(x: np.ndarray, model: TrainedModel) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != model.n:
        raise DimensionMismatch(f"sample has shape {x.shape}, model expects ({model.n},)")
    return x


def _check_batch(X: np.ndarray, model: TrainedModel) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != model.n:
        raise DimensionMismatch(f"batch has shape {X.shape}, model expects ({model.n}, N)")
    return X


def score(
    x: np.ndarray,
    model: TrainedModel,
    i: int,
    label_weight: Optional[float] = None,
) -> ClassScore:
    """Score of sample x against class i.

    Raises:
        DimensionMismatch: If x does not have length n
    """
    x = _check_vector(x, model)
    if not 0 <= i < model.num_classes:
        raise IndexError(f"class index {i} out of range for {model.num_classes} classes")
    weight = _label_weight(model, label_weight)

    cm = model.class_models[i]
    code = cm.P @ x
    residual = float(np.sum((x - cm.D @ code) ** 2))
    label_gap = -(cm.W @ code)
    label_gap[i] += 1.0
    label_error = weight * float(np.sum(label_gap ** 2))
    return ClassScore(
        class_index=i,
        residual=residual,
        label_error=label_error,
        total=residual + label_error,
    )


def score_batch(
    X: np.ndarray,
    model: TrainedModel,
    label_weight: Optional[float] = None,
) -> np.ndarray:
    """Total scores for every class and column.

    Args:
        X: n x N batch of feature columns
        model: Trained model
        label_weight: Override of the model's label weight

    Returns:
        Q x N array of totals
    """
    X = _check_batch(X, model)
    weight = _label_weight(model, label_weight)
    totals = np.empty((model.num_classes, X.shape[1]))
    for i, cm in enumerate(model.class_models):
        codes = cm.P @ X
        residual = np.sum((X - cm.D @ codes) ** 2, axis=0)
        label_gap = -(cm.W @ codes)
        label_gap[i, :] += 1.0
        totals[i] = residual + weight * np.sum(label_gap ** 2, axis=0)
    return totals


def classify(
    x: np.ndarray,
    model: TrainedModel,
    label_weight: Optional[float] = None,
) -> int:
    """0-based class index with the lowest total score."""
    x = _check_vector(x, model)
    totals = [score(x, model, i, label_weight).total for i in range(model.num_classes)]
    return int(np.argmin(totals))


def classify_batch(
    X: np.ndarray,
    model: TrainedModel,
    label_weight: Optional[float] = None,
) -> np.ndarray:
    """Column-wise classify; an n x 0 batch gives an empty label vector."""
    X = _check_batch(X, model)
    if X.shape[1] == 0:
        return np.zeros(0, dtype=np.int64)
    labels = np.argmin(score_batch(X, model, label_weight), axis=0).astype(np.int64)
    logger.debug("classify_batch_complete", samples=X.shape[1])
    return labels


def all_scores(
    x: np.ndarray,
    model: TrainedModel,
    label_weight: Optional[float] = None,
) -> List[ClassScore]:
    """Full score vector for one sample, in class order."""
    return [score(x, model, i, label_weight) for i in range(model.num_classes)]
