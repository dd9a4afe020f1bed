"""Raw image to feature vector, as configured by a FeaturePipelineConfig."""

import numpy as np

from src.features.hog import extract
from src.models import FeaturePipelineConfig, GrayImage, NormalizedGlyph
from src.preprocessing import grayscale_glyph, preprocess_pipeline, resize_only_pipeline


def pixel_features(glyph) -> np.ndarray:
    """Raw 1024-value glyph vector (the no-HOG ablation)."""
    pixels = glyph.pixels if isinstance(glyph, NormalizedGlyph) else np.asarray(glyph)
    return pixels.astype(np.float64).ravel()


def prepare_glyph(img: GrayImage, config: FeaturePipelineConfig):
    """Run the configured preprocessing mode.

    Returns a NormalizedGlyph, or a real 32x32 array for the grayscale mode.
    """
    if config.preprocess == "resize_only":
        return resize_only_pipeline(img)
    if config.preprocess == "grayscale":
        return grayscale_glyph(img)
    return preprocess_pipeline(img)


def extract_features(img: GrayImage, config: FeaturePipelineConfig) -> np.ndarray:
    """Feature vector of one raw image.

    Raises:
        EmptyGlyph: If the crop pipeline finds no ink
    """
    glyph = prepare_glyph(img, config)
    if config.kind == "pixels":
        return pixel_features(glyph)
    return extract(glyph, config.hog)
