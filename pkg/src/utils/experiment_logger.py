"""Structured logging of experiment events.

Each event carries an ``event_type`` and UTC timestamp so a run can be
reconstructed offline from the log stream:
- objective traces of training runs
- per-fold evaluation results
- parameter sweep points
- samples rejected during corpus loading
"""

from datetime import datetime, timezone
from typing import Any, Dict, Optional

import structlog

logger = structlog.get_logger()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def log_training_iteration(
    iteration: int,
    objective: float,
    relative_decrease: Optional[float] = None,
) -> None:
    """Log the objective after one outer training iteration.

    Args:
        iteration: Outer iteration (0 = after initialization)
        objective: Summed objective over classes
        relative_decrease: Decrease relative to the previous iteration
    """
    logger.info(
        "train_iteration_complete",
        event_type="training_iteration",
        timestamp=_now(),
        iteration=iteration,
        objective=objective,
        relative_decrease=relative_decrease,
    )


def log_fold_result(
    scheme: str,
    fold_index: int,
    n_train: int,
    n_test: int,
    accuracy: float,
    train_seconds: float,
    classify_ms_per_image: float,
) -> None:
    """Log the outcome of one cross-validation fold.

    Args:
        scheme: Fold scheme name
        fold_index: 0-based fold index
        n_train: Training columns
        n_test: Test columns
        accuracy: Fraction of test columns classified correctly
        train_seconds: Wall-clock training time
        classify_ms_per_image: Mean classification time per test image
    """
    logger.info(
        "cv_fold_complete",
        event_type="cv_fold",
        timestamp=_now(),
        scheme=scheme,
        fold=fold_index,
        n_train=n_train,
        n_test=n_test,
        accuracy=accuracy,
        train_seconds=train_seconds,
        classify_ms_per_image=classify_ms_per_image,
    )


def log_sweep_point(params: Dict[str, Any], pooled_accuracy: float, mean_fold_accuracy: float) -> None:
    """Log one evaluated grid point of a parameter sweep.

    Args:
        params: Varied parameter values
        pooled_accuracy: Accuracy pooled over all test predictions
        mean_fold_accuracy: Mean of per-fold accuracies
    """
    logger.info(
        "sweep_point_complete",
        event_type="sweep_point",
        timestamp=_now(),
        params=params,
        pooled_accuracy=pooled_accuracy,
        mean_fold_accuracy=mean_fold_accuracy,
    )


def log_sample_rejected(sample_id: str, reason: str) -> None:
    """Log a corpus sample dropped during loading.

    Args:
        sample_id: Record identity (path or file:offset)
        reason: Why it was dropped
    """
    logger.warning(
        "sample_rejected",
        event_type="sample_rejected",
        timestamp=_now(),
        sample_id=sample_id,
        reason=reason,
    )
