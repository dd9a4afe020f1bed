"""Histogram of oriented gradients over 32x32 glyphs.

Gradients are central differences with replicated borders. Each pixel of a
complete cell votes its gradient magnitude into orientation bins; partial
cells at the right/bottom edges are dropped (a 3-pixel cell gives a 10x10 grid
on 32x32 input).
"""

from typing import Tuple, Union

import numpy as np
import structlog

from src.models import HogConfig, NormalizedGlyph

logger = structlog.get_logger()

ImageLike = Union[NormalizedGlyph, np.ndarray]


def _as_array(glyph: ImageLike) -> np.ndarray:
    pixels = glyph.pixels if isinstance(glyph, NormalizedGlyph) else np.asarray(glyph)
    if pixels.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {pixels.shape}")
    return pixels.astype(np.float64)


def gradients(glyph: ImageLike) -> Tuple[np.ndarray, np.ndarray]:
    """Central-difference gradients.

    gx(r, c) = I(r, c+1) - I(r, c-1) and gy(r, c) = I(r+1, c) - I(r-1, c),
    with edge pixels replicated outside the image.

    Args:
        glyph: Normalized glyph or real 2-D array

    Returns:
        (gx, gy), each the size of the input
    """
    image = np.pad(_as_array(glyph), 1, mode="edge")
    gx = image[1:-1, 2:] - image[1:-1, :-2]
    gy = image[2:, 1:-1] - image[:-2, 1:-1]
    return gx, gy


def orientation_degrees(gx: np.ndarray, gy: np.ndarray, cfg: HogConfig) -> np.ndarray:
    """Gradient angle folded into [0, 180) or [0, 360)."""
    angle = np.degrees(np.arctan2(gy, gx))
    return np.mod(angle, cfg.angle_range)


def cell_histograms(gx: np.ndarray, gy: np.ndarray, cfg: HogConfig) -> np.ndarray:
    """Magnitude-weighted orientation histograms per cell.

    Soft binning splits each vote linearly between the two nearest bin
    centers (wrapping around the orientation range); hard binning puts the
    whole vote in the containing bin.

    Args:
        gx: Horizontal gradient
        gy: Vertical gradient
        cfg: HOG settings

    Returns:
        Array of shape (cells_y, cells_x, num_bins)
    """
    if gx.shape != gy.shape:
        raise ValueError(f"gradient shapes differ: {gx.shape} vs {gy.shape}")

    cells_y, cells_x = cfg.grid_shape(*gx.shape)
    rows, cols = cells_y * cfg.cell_size, cells_x * cfg.cell_size
    hist = np.zeros(cells_y * cells_x * cfg.num_bins)
    if rows == 0 or cols == 0:
        return hist.reshape(cells_y, cells_x, cfg.num_bins)

    gx = gx[:rows, :cols]
    gy = gy[:rows, :cols]
    magnitude = np.hypot(gx, gy)
    angle = orientation_degrees(gx, gy, cfg)
    bin_width = cfg.angle_range / cfg.num_bins

    r, c = np.indices((rows, cols))
    cell = (r // cfg.cell_size) * cells_x + (c // cfg.cell_size)
    base = (cell * cfg.num_bins).ravel()
    magnitude = magnitude.ravel()

    if cfg.binning == "hard":
        index = np.floor(angle / bin_width).astype(np.int64).ravel() % cfg.num_bins
        np.add.at(hist, base + index, magnitude)
    else:
        position = (angle / bin_width - 0.5).ravel()
        lower = np.floor(position)
        frac = position - lower
        lower_bin = lower.astype(np.int64) % cfg.num_bins
        upper_bin = (lower_bin + 1) % cfg.num_bins
        np.add.at(hist, base + lower_bin, magnitude * (1.0 - frac))
        np.add.at(hist, base + upper_bin, magnitude * frac)

    return hist.reshape(cells_y, cells_x, cfg.num_bins)


def _min_max(values: np.ndarray) -> np.ndarray:
    low, high = values.min(), values.max()
    if high == low:
        return np.zeros_like(values)
    return (values - low) / (high - low)


def normalize_features(
    histograms: np.ndarray,
    glyph: ImageLike,
    cfg: HogConfig,
) -> np.ndarray:
    """Min-max scale the histogram tensor to [0, 1] and flatten it.

    Global scope uses one min/max over the whole descriptor; cell scope scales
    each cell's histogram on its own. A flat range maps to zeros.

    Args:
        histograms: Raw (cells_y, cells_x, num_bins) histograms
        glyph: Source glyph (kept for interface symmetry; contrast is read from
            the histograms)
        cfg: HOG settings

    Returns:
        Feature vector of length cells_y * cells_x * num_bins
    """
    if not np.isfinite(histograms).all():
        raise ValueError("histograms contain non-finite values")

    if histograms.size == 0:
        return histograms.ravel().astype(np.float64)

    if cfg.normalization == "cell":
        cells = histograms.reshape(-1, histograms.shape[-1])
        scaled = np.vstack([_min_max(cell) for cell in cells])
        return scaled.ravel()

    return _min_max(histograms.ravel().astype(np.float64))


def extract(glyph: ImageLike, cfg: HogConfig) -> np.ndarray:
    """HOG descriptor of a glyph.

    Args:
        glyph: Normalized glyph or 32x32 real image
        cfg: HOG settings

    Returns:
        Feature vector of length cfg.feature_length()
    """
    gx, gy = gradients(glyph)
    histograms = cell_histograms(gx, gy, cfg)
    return normalize_features(histograms, glyph, cfg)
