"""Raw image to normalized glyph preprocessing."""

from src.preprocessing.threshold import otsu_threshold, binarize, between_class_variance
from src.preprocessing.geometry import (
    crop_to_bounding_box,
    resize_to_32,
    resample_nearest,
    nearest_indices,
)
from src.preprocessing.pipeline import (
    preprocess_pipeline,
    resize_only_pipeline,
    grayscale_glyph,
)

__all__ = [
    "otsu_threshold",
    "binarize",
    "between_class_variance",
    "crop_to_bounding_box",
    "resize_to_32",
    "resample_nearest",
    "nearest_indices",
    "preprocess_pipeline",
    "resize_only_pipeline",
    "grayscale_glyph",
]
