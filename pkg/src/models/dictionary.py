"""Trained dictionary pairs and the model bank built from them."""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from src.errors import DimensionMismatch
from src.models.params import FeaturePipelineConfig, Hyperparameters


def _frozen(array: np.ndarray) -> np.ndarray:
    values = np.array(array, dtype=np.float64, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class ClassModel:
    """One class's analysis dictionary P (m x n), synthesis dictionary D (n x m)
    and classifier matrix W (Q x m)."""

    P: np.ndarray
    D: np.ndarray
    W: np.ndarray

    def __post_init__(self):
        P, D, W = _frozen(self.P), _frozen(self.D), _frozen(self.W)
        m, n = P.shape
        if D.shape != (n, m):
            raise DimensionMismatch(f"D has shape {D.shape}, expected {(n, m)}")
        if W.ndim != 2 or W.shape[1] != m:
            raise DimensionMismatch(f"W has shape {W.shape}, expected (Q, {m})")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "W", W)

    @property
    def max_atom_norm(self) -> float:
        return float(np.linalg.norm(self.D, axis=0).max()) if self.D.size else 0.0


@dataclass(frozen=True)
class TrainedModel:
    """Bank of Q class models plus the settings that produced it."""

    class_models: List[ClassModel]
    class_names: List[str]
    hyperparameters: Hyperparameters
    pipeline: FeaturePipelineConfig = field(default_factory=FeaturePipelineConfig)

    def __post_init__(self):
        models = tuple(self.class_models)
        if len(models) != len(self.class_names):
            raise DimensionMismatch(
                f"{len(models)} class models for {len(self.class_names)} class names"
            )
        if models:
            n, m, q = models[0].D.shape[0], models[0].D.shape[1], len(models)
            for index, cm in enumerate(models):
                if cm.D.shape != (n, m) or cm.W.shape != (q, m):
                    raise DimensionMismatch(f"class model {index} has inconsistent shapes")
        object.__setattr__(self, "class_models", models)
        object.__setattr__(self, "class_names", tuple(self.class_names))

    @property
    def num_classes(self) -> int:
        return len(self.class_models)

    @property
    def n(self) -> int:
        return self.class_models[0].D.shape[0]

    @property
    def m(self) -> int:
        return self.class_models[0].D.shape[1]

    @property
    def max_atom_norm(self) -> float:
        return max(cm.max_atom_norm for cm in self.class_models)
