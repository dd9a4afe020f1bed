"""Domain data models."""

from src.models.image import GLYPH_SIZE, GrayImage, BinaryImage, NormalizedGlyph
from src.models.params import (
    Hyperparameters,
    HogConfig,
    FeaturePipelineConfig,
    build_hyperparameters,
)
from src.models.dataset import ClassPartitionedDataset, label_matrix
from src.models.dictionary import ClassModel, TrainedModel

__all__ = [
    "GLYPH_SIZE",
    "GrayImage",
    "BinaryImage",
    "NormalizedGlyph",
    "Hyperparameters",
    "HogConfig",
    "FeaturePipelineConfig",
    "build_hyperparameters",
    "ClassPartitionedDataset",
    "label_matrix",
    "ClassModel",
    "TrainedModel",
]
