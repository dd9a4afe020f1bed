"""Shared fixtures: synthetic class-separable datasets and small settings."""

import dataclasses

import numpy as np
import pytest
import structlog

from src.models import ClassPartitionedDataset, Hyperparameters


def make_separable_dataset(
    num_classes: int = 3,
    per_class: int = 10,
    block: int = 4,
    seed: int = 0,
    subjects: int = 5,
    with_metadata: bool = True,
) -> ClassPartitionedDataset:
    """Class i lives on coordinates [i*block, (i+1)*block) with positive weights.

    Columns are interleaved by class so per-class order tests are meaningful;
    sample j of a class belongs to subject j % subjects, repetition j // subjects.
    """
    rng = np.random.default_rng(seed)
    n = num_classes * block
    columns, labels, subject_ids, repetitions = [], [], [], []
    for j in range(per_class):
        for i in range(num_classes):
            x = np.zeros(n)
            x[i * block:(i + 1) * block] = rng.uniform(1.0, 2.0, block)
            columns.append(x)
            labels.append(i)
            subject_ids.append(f"s{j % subjects}")
            repetitions.append(j // subjects)

    return ClassPartitionedDataset(
        features=np.column_stack(columns),
        labels=np.asarray(labels),
        class_names=[f"c{i}" for i in range(num_classes)],
        subject_ids=np.asarray(subject_ids) if with_metadata else None,
        repetitions=np.asarray(repetitions) if with_metadata else None,
    )


def make_subspace_dataset(
    num_classes: int = 3,
    per_class: int = 30,
    dim: int = 24,
    seed: int = 0,
) -> ClassPartitionedDataset:
    """Classes in mutually orthogonal subspaces of R^dim, in a random basis.

    The coordinate-block construction of make_separable_dataset is rotated by a
    random orthogonal matrix, so no class is aligned with the coordinate axes.
    """
    block = dim // num_classes
    base = make_separable_dataset(num_classes=num_classes, per_class=per_class, block=block, seed=seed)
    Q, _ = np.linalg.qr(np.random.default_rng(seed + 1).standard_normal((dim, dim)))
    return dataclasses.replace(base, features=Q @ base.features)


@pytest.fixture
def separable_dataset():
    """Three classes on disjoint 4-d coordinate blocks, ten samples each."""
    return make_separable_dataset()


@pytest.fixture
def small_hp():
    """Hyperparameters sized for the synthetic datasets."""
    return Hyperparameters(
        m=4,
        lambda1=1e-2,
        lambda2=1.0,
        lambda3=1e-1,
        gamma=1e-6,
        rho=1.0,
        outer_iters=10,
        admm_iters=30,
        admm_tol=1e-8,
        tol=0.0,
    )


@pytest.fixture(autouse=True)
def reset_logging():
    """The CLI binds structlog to the current stderr; unbind it after each test."""
    yield
    structlog.reset_defaults()
