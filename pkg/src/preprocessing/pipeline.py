"""Raw scan to normalized glyph pipelines."""

import numpy as np
import structlog

from src.models import GLYPH_SIZE, GrayImage, NormalizedGlyph
from src.preprocessing.geometry import crop_to_bounding_box, resample_nearest, resize_to_32
from src.preprocessing.threshold import binarize, otsu_threshold

logger = structlog.get_logger()


def preprocess_pipeline(img: GrayImage) -> NormalizedGlyph:
    """Otsu threshold, binarize, crop to a centered square and resize to 32x32.

    Args:
        img: Raw grayscale scan

    Returns:
        Normalized glyph

    Raises:
        EmptyGlyph: If binarization leaves no ink
    """
    # Step 1: Global threshold
    threshold = otsu_threshold(img)

    # Step 2: Binarize with ink = 1
    binary = binarize(img, threshold)

    # Step 3: Crop and center
    cropped = crop_to_bounding_box(binary)

    # Step 4: Resample
    glyph = resize_to_32(cropped)

    logger.debug(
        "preprocess_complete",
        width=img.width,
        height=img.height,
        threshold=threshold,
        crop_side=cropped.width,
    )
    return glyph


def resize_only_pipeline(img: GrayImage) -> NormalizedGlyph:
    """Pipeline for pre-sized square scans: upscale to 32x32, then binarize.

    No cropping is done; the source corpus already centers and sizes digits.
    """
    upscaled = GrayImage(resample_nearest(img.pixels, GLYPH_SIZE))
    return NormalizedGlyph(binarize(upscaled, otsu_threshold(upscaled)).pixels)


def grayscale_glyph(img: GrayImage) -> np.ndarray:
    """Upscale a square scan to 32x32 and scale intensities to [0, 1].

    Used for the HOG-on-grayscale ablation; polarity is flipped when needed so
    ink is bright, using the same minority rule as binarization.
    """
    upscaled = GrayImage(resample_nearest(img.pixels, GLYPH_SIZE))
    values = upscaled.pixels.astype(np.float64) / 255.0
    threshold = otsu_threshold(upscaled)
    above = int((upscaled.pixels > threshold).sum())
    if above > upscaled.pixels.size - above:
        values = 1.0 - values
    return values
