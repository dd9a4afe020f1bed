"""Cropping and nearest-neighbor resampling of glyph images."""

from typing import Tuple

import numpy as np

from src.errors import EmptyGlyph
from src.models import GLYPH_SIZE, BinaryImage, NormalizedGlyph


def foreground_bounds(pixels: np.ndarray) -> Tuple[int, int, int, int]:
    """Inclusive (top, bottom, left, right) of the nonzero pixels.

    Raises:
        EmptyGlyph: If no pixel is nonzero
    """
    rows = np.flatnonzero(pixels.any(axis=1))
    cols = np.flatnonzero(pixels.any(axis=0))
    if rows.size == 0:
        raise EmptyGlyph("image has no foreground pixel")
    return int(rows[0]), int(rows[-1]), int(cols[0]), int(cols[-1])


def crop_to_bounding_box(img: BinaryImage) -> BinaryImage:
    """Tight foreground box padded to a centered square.

    Odd padding puts the extra row at the bottom and the extra column at the
    right.

    Args:
        img: Binary image with at least one ink pixel

    Returns:
        Square binary image

    Raises:
        EmptyGlyph: If the image has no ink
    """
    top, bottom, left, right = foreground_bounds(img.pixels)
    box = img.pixels[top:bottom + 1, left:right + 1]

    height, width = box.shape
    side = max(height, width)
    pad_rows = side - height
    pad_cols = side - width
    padding = (
        (pad_rows // 2, pad_rows - pad_rows // 2),
        (pad_cols // 2, pad_cols - pad_cols // 2),
    )
    return BinaryImage(np.pad(box, padding, mode="constant", constant_values=0))


def nearest_indices(source: int, target: int) -> np.ndarray:
    """Source index sampled for each of ``target`` output positions.

    Output pixel i takes the source pixel under its center,
    floor((i + 0.5) * source / target).
    """
    positions = ((np.arange(target) + 0.5) * source / target).astype(np.int64)
    return np.minimum(positions, source - 1)


def resample_nearest(pixels: np.ndarray, size: int = GLYPH_SIZE) -> np.ndarray:
    """Nearest-neighbor resample of a square array to size x size."""
    if pixels.ndim != 2 or pixels.shape[0] != pixels.shape[1] or pixels.shape[0] < 1:
        raise ValueError(f"resampling needs a non-empty square array, got {pixels.shape}")
    index = nearest_indices(pixels.shape[0], size)
    return pixels[np.ix_(index, index)]


def resize_to_32(img: BinaryImage) -> NormalizedGlyph:
    """Nearest-neighbor resample of a square binary image to 32x32."""
    return NormalizedGlyph(resample_nearest(img.pixels, GLYPH_SIZE))
