"""Train-and-test loop over a fold plan."""

from concurrent.futures import ThreadPoolExecutor, as_completed
import time
from typing import Optional

import numpy as np
import structlog
from sklearn.metrics import confusion_matrix

from src.classification import classify_batch
from src.config import settings
from src.dictionary import train
from src.evaluation.folds import FoldPlan
from src.evaluation.report import EvalReport, FoldResult
from src.models import ClassPartitionedDataset, FeaturePipelineConfig, Hyperparameters
from src.utils.experiment_logger import log_fold_result
from src.utils.metrics import MetricsCollector

logger = structlog.get_logger()


def run_fold(
    dataset: ClassPartitionedDataset,
    plan: FoldPlan,
    fold_index: int,
    hp: Hyperparameters,
    seed: int,
    class_workers: int = 1,
    pipeline: Optional[FeaturePipelineConfig] = None,
    metrics: Optional[MetricsCollector] = None,
) -> FoldResult:
    """Train on one fold's training columns and classify its test columns."""
    train_idx, test_idx = plan.folds[fold_index]
    train_set = dataset.subset(train_idx)
    test_set = dataset.subset(test_idx)

    started = time.perf_counter()
    model, _ = train(train_set, hp, seed, workers=class_workers, pipeline=pipeline)
    train_seconds = time.perf_counter() - started

    started = time.perf_counter()
    predicted = classify_batch(test_set.features, model)
    classify_seconds = time.perf_counter() - started
    n_test = test_set.num_samples
    classify_ms = 1000.0 * classify_seconds / n_test if n_test else 0.0

    if metrics is not None and n_test:
        metrics.record_histogram("classify_ms_per_image", classify_ms)
        metrics.increment_counter("test_samples", n_test)

    confusion = confusion_matrix(
        test_set.labels, predicted, labels=np.arange(dataset.num_classes)
    ) if n_test else np.zeros((dataset.num_classes, dataset.num_classes), dtype=np.int64)

    result = FoldResult(
        fold_index=fold_index,
        n_train=train_set.num_samples,
        n_test=n_test,
        n_correct=int(np.trace(confusion)),
        confusion=confusion,
        train_seconds=train_seconds,
        classify_ms_per_image=classify_ms,
    )
    log_fold_result(
        plan.scheme, fold_index, result.n_train, n_test, result.accuracy, train_seconds, classify_ms
    )
    return result


def run_cv(
    dataset: ClassPartitionedDataset,
    plan: FoldPlan,
    hp: Hyperparameters,
    seed: int,
    workers: Optional[int] = None,
    pipeline: Optional[FeaturePipelineConfig] = None,
    metrics: Optional[MetricsCollector] = None,
) -> EvalReport:
    """Evaluate a fold plan.

    Folds run concurrently when ``workers`` > 1 and there is more than one
    fold; a single fold instead spreads its classes over the workers.

    Args:
        dataset: Full dataset
        plan: Fold plan over the dataset's columns
        hp: Hyperparameters for every fold
        seed: Initialization seed for every fold
        workers: Concurrency cap (default from settings)
        pipeline: Feature pipeline recorded in fold models
        metrics: Optional collector for timings

    Returns:
        Evaluation report (zero folds for an empty plan)

    Raises:
        SingularSystem, DatasetError: Propagated from a fold's training
    """
    workers = max(1, workers or settings.workers)
    report = EvalReport(
        scheme=plan.scheme,
        class_names=list(dataset.class_names),
        feature_ms_per_image=dataset.extraction_ms_per_image,
        notes=list(plan.notes),
    )
    if not plan.folds:
        logger.warning("run_cv_empty_plan", scheme=plan.scheme)
        return report

    logger.info("run_cv_start", scheme=plan.scheme, folds=len(plan.folds), workers=workers)

    if workers > 1 and len(plan.folds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = {
                executor.submit(run_fold, dataset, plan, t, hp, seed, 1, pipeline, metrics): t
                for t in range(len(plan.folds))
            }
            for future in as_completed(futures):
                try:
                    report.add_fold(future.result())
                except Exception as e:
                    logger.error("run_cv_fold_failed", fold=futures[future], error=str(e))
                    raise
    else:
        for t in range(len(plan.folds)):
            report.add_fold(run_fold(dataset, plan, t, hp, seed, workers, pipeline, metrics))

    logger.info(
        "run_cv_complete",
        scheme=plan.scheme,
        pooled_accuracy=report.pooled_accuracy,
        mean_fold_accuracy=report.mean_fold_accuracy,
    )
    return report
