"""Alternating minimization of the labeled dictionary pair objective.

Classes are fully decoupled in the objective, so every class keeps its own
state and one outer iteration runs the A, P, W, D updates for each class
(optionally on a thread pool). The objective trace is the sum over classes.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog

from src.config import settings
from src.dictionary.linalg import SpdFactor, normalize_columns
from src.dictionary.objective import class_objective_terms
from src.dictionary.updates import (
    AdmmState,
    analysis_gram,
    update_A,
    update_D,
    update_P,
    update_W,
)
from src.models import (
    ClassModel,
    ClassPartitionedDataset,
    FeaturePipelineConfig,
    Hyperparameters,
    TrainedModel,
)
from src.utils.experiment_logger import log_training_iteration

logger = structlog.get_logger()


@dataclass
class ClassState:
    """Mutable per-class iterate during training."""

    index: int
    X: np.ndarray
    H: np.ndarray
    complement_gram: np.ndarray
    gram: SpdFactor
    P: np.ndarray
    D: np.ndarray
    A: np.ndarray
    W: np.ndarray
    admm: AdmmState

    def objective_terms(self, hp: Hyperparameters) -> dict:
        return class_objective_terms(
            self.X, self.H, self.P, self.D, self.A, self.W, hp,
            complement_gram=self.complement_gram,
        )

    def to_class_model(self) -> ClassModel:
        return ClassModel(P=self.P, D=self.D, W=self.W)


def _resolve_labels(
    dataset: ClassPartitionedDataset,
    labels: Optional[Sequence[np.ndarray]],
) -> List[np.ndarray]:
    if labels is None:
        return [dataset.label_matrix(i) for i in range(dataset.num_classes)]
    labels = [np.asarray(H, dtype=np.float64) for H in labels]
    for i, H in enumerate(labels):
        expected = (dataset.num_classes, dataset.class_count(i))
        if H.shape != expected:
            raise ValueError(f"label matrix {i} has shape {H.shape}, expected {expected}")
    return labels


def init(
    dataset: ClassPartitionedDataset,
    hp: Hyperparameters,
    seed: int,
    labels: Optional[Sequence[np.ndarray]] = None,
) -> List[ClassState]:
    """Random P and D, then A from the code update with W = 0, then W.

    Each class draws from its own child of ``SeedSequence(seed)``, so the
    result does not depend on how classes are scheduled.

    Args:
        dataset: Training data with every class non-empty
        hp: Hyperparameters
        seed: Random seed
        labels: Optional label matrices H_i overriding the one-hot defaults

    Returns:
        One ClassState per class
    """
    dataset.validate_for_training()
    labels = _resolve_labels(dataset, labels)
    n, m, q = dataset.n, hp.m, dataset.num_classes

    total_gram = dataset.features @ dataset.features.T
    children = np.random.SeedSequence(seed).spawn(q)

    states = []
    for i in range(q):
        rng = np.random.default_rng(children[i])
        X = dataset.class_matrix(i)
        P = rng.standard_normal((m, n))
        D = normalize_columns(rng.standard_normal((n, m)))
        complement_gram = total_gram - X @ X.T

        A = update_A(X, D, np.zeros((q, m)), P, labels[i], hp)
        W = update_W(A, labels[i], hp)

        states.append(
            ClassState(
                index=i,
                X=X,
                H=labels[i],
                complement_gram=complement_gram,
                gram=analysis_gram(X, None, hp, complement_gram=complement_gram),
                P=P,
                D=D,
                A=A,
                W=W,
                admm=AdmmState.start(D, hp.rho),
            )
        )

    logger.info("train_initialized", classes=q, n=n, m=m, seed=seed)
    return states


def step_class(state: ClassState, hp: Hyperparameters) -> ClassState:
    """One outer iteration for one class: A, then P, then W, then D.

    The ADMM dictionary replaces the previous one only when it does not raise
    the reconstruction error; both are feasible.
    """
    state.A = update_A(state.X, state.D, state.W, state.P, state.H, hp)
    state.P = update_P(state.X, None, state.A, hp, gram=state.gram)
    state.W = update_W(state.A, state.H, hp)

    candidate, admm = update_D(state.X, state.A, hp, state.admm)
    previous_error = float(np.sum((state.X - state.D @ state.A) ** 2))
    candidate_error = float(np.sum((state.X - candidate @ state.A) ** 2))
    state.admm = admm
    if candidate_error <= previous_error:
        state.D = candidate
    else:
        logger.debug(
            "d_update_rejected",
            class_index=state.index,
            previous=previous_error,
            candidate=candidate_error,
        )
    return state


def train(
    dataset: ClassPartitionedDataset,
    hp: Hyperparameters,
    seed: int,
    labels: Optional[Sequence[np.ndarray]] = None,
    workers: Optional[int] = None,
    pipeline: Optional[FeaturePipelineConfig] = None,
) -> Tuple[TrainedModel, List[float]]:
    """Train per-class dictionary pairs and classifiers.

    Runs until the relative objective decrease drops below ``hp.tol`` or
    ``hp.outer_iters`` iterations have run. The trace holds the objective
    after initialization and after every outer iteration.

    Args:
        dataset: Training data (>= 2 classes, each non-empty)
        hp: Hyperparameters
        seed: Random seed for the initialization
        labels: Optional label matrices overriding the one-hot defaults
        workers: Max classes updated concurrently (default from settings)
        pipeline: Feature pipeline recorded in the model

    Returns:
        (trained model, objective trace)

    Raises:
        SingularSystem: If an update system cannot be factored
        DatasetError: If the dataset cannot be trained on
    """
    workers = max(1, workers or settings.workers)
    states = init(dataset, hp, seed, labels)

    trace = [sum(s.objective_terms(hp)["total"] for s in states)]
    log_training_iteration(0, trace[0])

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for iteration in range(1, hp.outer_iters + 1):
            if executor is not None:
                states = list(executor.map(lambda s: step_class(s, hp), states))
            else:
                states = [step_class(s, hp) for s in states]

            trace.append(sum(s.objective_terms(hp)["total"] for s in states))
            previous, current = trace[-2], trace[-1]
            decrease = (previous - current) / max(abs(previous), np.finfo(float).tiny)
            log_training_iteration(iteration, current, relative_decrease=decrease)

            if decrease < hp.tol:
                logger.warning(
                    "train_early_stop",
                    iteration=iteration,
                    relative_decrease=decrease,
                    objective_increased=bool(decrease < 0),
                )
                break
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    model = TrainedModel(
        class_models=[s.to_class_model() for s in states],
        class_names=dataset.class_names,
        hyperparameters=hp,
        pipeline=pipeline or FeaturePipelineConfig(),
    )
    logger.info(
        "train_complete",
        iterations=len(trace) - 1,
        objective=trace[-1],
        max_atom_norm=model.max_atom_norm,
    )
    return model, trace
