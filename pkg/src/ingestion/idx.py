"""Reader for IDX files (the MNIST/USPS container format)."""

from pathlib import Path

import numpy as np

from src.errors import DecodeError, ManifestError

# type code -> big-endian numpy dtype
IDX_DTYPES = {
    0x08: ">u1",
    0x09: ">i1",
    0x0B: ">i2",
    0x0C: ">i4",
    0x0D: ">f4",
    0x0E: ">f8",
}


def read_idx(path: Path) -> np.ndarray:
    """Load an IDX file into an array of its declared shape.

    Raises:
        ManifestError: If the file does not exist
        DecodeError: If the header or payload is malformed
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError as e:
        raise ManifestError(f"IDX file not found: {path}") from e

    if len(raw) < 4 or raw[0] != 0 or raw[1] != 0:
        raise DecodeError(f"{path}: not an IDX file")
    code, ndim = raw[2], raw[3]
    if code not in IDX_DTYPES:
        raise DecodeError(f"{path}: unknown IDX type code 0x{code:02x}")

    header_end = 4 + 4 * ndim
    if len(raw) < header_end:
        raise DecodeError(f"{path}: truncated IDX header")
    shape = tuple(int(d) for d in np.frombuffer(raw, dtype=">u4", count=ndim, offset=4))

    dtype = np.dtype(IDX_DTYPES[code])
    expected = int(np.prod(shape)) * dtype.itemsize
    if len(raw) - header_end != expected:
        raise DecodeError(
            f"{path}: payload has {len(raw) - header_end} bytes, shape {shape} needs {expected}"
        )
    return np.frombuffer(raw, dtype=dtype, offset=header_end).reshape(shape)


def to_uint8_images(images: np.ndarray) -> np.ndarray:
    """Gray levels 0..255 for an IDX image stack.

    Integer stacks already in range are kept; anything else (USPS ships
    floats in [-1, 1]) is min-max rescaled over the whole stack.
    """
    if images.ndim != 3:
        raise DecodeError(f"IDX image stack must be 3-D, got shape {images.shape}")
    if np.issubdtype(images.dtype, np.integer) and images.min() >= 0 and images.max() <= 255:
        return images.astype(np.uint8)

    values = images.astype(np.float64)
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return np.zeros(images.shape, dtype=np.uint8)
    return np.rint(255.0 * (values - lo) / (hi - lo)).astype(np.uint8)
