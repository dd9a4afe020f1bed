"""Feature extraction: HOG descriptors and raw pixel vectors."""

from src.features.hog import gradients, cell_histograms, normalize_features, extract
from src.features.pipeline import extract_features, pixel_features, prepare_glyph

__all__ = [
    "gradients",
    "cell_histograms",
    "normalize_features",
    "extract",
    "extract_features",
    "pixel_features",
    "prepare_glyph",
]
