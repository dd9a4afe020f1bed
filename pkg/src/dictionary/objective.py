"""Value of the labeled dictionary pair objective."""

from typing import Dict, Optional, Sequence

import numpy as np

from src.models import ClassPartitionedDataset, Hyperparameters


def class_objective_terms(
    X: np.ndarray,
    H: np.ndarray,
    P: np.ndarray,
    D: np.ndarray,
    A: np.ndarray,
    W: np.ndarray,
    hp: Hyperparameters,
    X_bar: Optional[np.ndarray] = None,
    complement_gram: Optional[np.ndarray] = None,
) -> Dict[str, float]:
    """Weighted terms of one class's objective.

    ``||P X_bar||_F^2`` is taken from ``complement_gram`` (X_bar X_bar^T) when
    given, which avoids touching the full complement matrix.

    Returns:
        Dictionary with reconstruction, discrimination, label, relaxation and
        total
    """
    reconstruction = float(np.sum((X - D @ A) ** 2))
    if complement_gram is not None:
        suppression = float(np.sum(P * (P @ complement_gram)))
    elif X_bar is not None and X_bar.size:
        suppression = float(np.sum((P @ X_bar) ** 2))
    else:
        suppression = 0.0
    label = float(np.sum((H - W @ A) ** 2))
    relaxation = float(np.sum((P @ X - A) ** 2))

    terms = {
        "reconstruction": reconstruction,
        "discrimination": hp.lambda1 * suppression,
        "label": hp.lambda2 * label,
        "relaxation": hp.lambda3 * relaxation,
    }
    terms["total"] = (
        terms["reconstruction"] + terms["discrimination"] + terms["label"] + terms["relaxation"]
    )
    return terms


def objective(
    dataset: ClassPartitionedDataset,
    H: Sequence[np.ndarray],
    P: Sequence[np.ndarray],
    D: Sequence[np.ndarray],
    A: Sequence[np.ndarray],
    W: Sequence[np.ndarray],
    hp: Hyperparameters,
) -> float:
    """Sum over classes of
    ||X_i - D_i A_i||^2 + l1 ||P_i X_bar_i||^2 + l2 ||H_i - W_i A_i||^2 + l3 ||P_i X_i - A_i||^2.
    """
    total = 0.0
    for i in range(dataset.num_classes):
        terms = class_objective_terms(
            dataset.class_matrix(i),
            H[i],
            P[i],
            D[i],
            A[i],
            W[i],
            hp,
            X_bar=dataset.complement_matrix(i),
        )
        total += terms["total"]
    return total
