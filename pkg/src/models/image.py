"""Image buffers passed between preprocessing stages.

All images are stored as 2-D numpy arrays indexed ``[row, col]``; the
row-major flattening of ``pixels`` is the ``data`` sequence of each type.
"""

from dataclasses import dataclass

import numpy as np

GLYPH_SIZE = 32


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale raster, intensities in [0, 255]."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"GrayImage needs a non-empty 2-D array, got shape {pixels.shape}")
        if pixels.size and (pixels.min() < 0 or pixels.max() > 255):
            raise ValueError("GrayImage intensities must lie in [0, 255]")
        object.__setattr__(self, "pixels", pixels.astype(np.uint8, copy=False))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def data(self) -> np.ndarray:
        """Row-major intensities."""
        return self.pixels.ravel()

    @classmethod
    def from_data(cls, width: int, height: int, data) -> "GrayImage":
        """Build from a flat row-major sequence of width * height values."""
        values = np.asarray(data)
        if values.size != width * height:
            raise ValueError(
                f"GrayImage data has {values.size} values, expected {width * height}"
            )
        return cls(values.reshape(height, width))


@dataclass(frozen=True)
class BinaryImage:
    """Binary raster, 1 = ink / foreground."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"BinaryImage needs a non-empty 2-D array, got shape {pixels.shape}")
        if not np.isin(pixels, (0, 1)).all():
            raise ValueError("BinaryImage values must be 0 or 1")
        object.__setattr__(self, "pixels", pixels.astype(np.uint8, copy=False))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def data(self) -> np.ndarray:
        return self.pixels.ravel()

    @property
    def foreground_count(self) -> int:
        return int(self.pixels.sum())


@dataclass(frozen=True)
class NormalizedGlyph:
    """32x32 binary glyph with ink = 1."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.shape != (GLYPH_SIZE, GLYPH_SIZE):
            raise ValueError(f"NormalizedGlyph must be 32x32, got shape {pixels.shape}")
        if not np.isin(pixels, (0, 1)).all():
            raise ValueError("NormalizedGlyph values must be 0 or 1")
        object.__setattr__(self, "pixels", pixels.astype(np.uint8, copy=False))

    @property
    def data(self) -> np.ndarray:
        return self.pixels.ravel()
