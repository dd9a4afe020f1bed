"""Global Otsu thresholding and polarity-aware binarization."""

import numpy as np
import structlog

from src.models import BinaryImage, GrayImage

logger = structlog.get_logger()


def between_class_variance(histogram: np.ndarray) -> np.ndarray:
    """Unnormalized between-class variance for every threshold 0..255.

    Threshold t puts intensities <= t in the background class. Thresholds that
    leave either class empty get -inf.

    Args:
        histogram: 256-bin intensity counts

    Returns:
        Array of 256 variances
    """
    levels = np.arange(256, dtype=np.float64)
    counts = histogram.astype(np.int64)
    total = counts.sum()
    weighted_total = float((levels * counts).sum())

    w0 = np.cumsum(counts).astype(np.float64)
    w1 = total - w0
    sum0 = np.cumsum(levels * counts)

    variance = np.full(256, -np.inf)
    valid = (w0 > 0) & (w1 > 0)
    mean0 = sum0[valid] / w0[valid]
    mean1 = (weighted_total - sum0[valid]) / w1[valid]
    diff = mean0 - mean1
    variance[valid] = w0[valid] * w1[valid] * (diff * diff)
    return variance


def otsu_threshold(img: GrayImage) -> int:
    """Otsu threshold of a grayscale image.

    Ties between maximizers go to the lowest threshold. A constant image
    returns its single intensity.

    Args:
        img: Grayscale image

    Returns:
        Threshold in [0, 255]
    """
    histogram = np.bincount(img.data, minlength=256)
    levels = np.flatnonzero(histogram)
    if levels.size == 1:
        return int(levels[0])

    variance = between_class_variance(histogram)
    # argmax returns the first (lowest) maximizer
    threshold = int(np.argmax(variance))

    logger.debug("otsu_threshold_computed", threshold=threshold, levels=int(levels.size))
    return threshold


def binarize(img: GrayImage, threshold: int) -> BinaryImage:
    """Split an image at threshold and mark the ink side as 1.

    The side holding fewer pixels is ink; on an exact tie the bright side
    (> threshold) is ink.

    Args:
        img: Grayscale image
        threshold: Intensity in [0, 255]

    Returns:
        Binary image
    """
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold must be in [0, 255], got {threshold}")

    above = img.pixels > threshold
    count_above = int(above.sum())
    count_below = above.size - count_above

    ink = above if count_above <= count_below else ~above
    return BinaryImage(ink.astype(np.uint8))
