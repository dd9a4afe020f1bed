"""Classification with trained dictionary pairs."""

from src.classification.classifier import (
    ClassScore,
    score,
    score_batch,
    classify,
    classify_batch,
    all_scores,
)

__all__ = [
    "ClassScore",
    "score",
    "score_batch",
    "classify",
    "classify_batch",
    "all_scores",
]
