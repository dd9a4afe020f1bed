"""Exceptions raised across the recognizer."""


class LpdplError(Exception):
    """Base class for all recognizer errors."""


class EmptyGlyph(LpdplError):
    """A binarized image has no foreground pixel to crop."""


class SingularSystem(LpdplError):
    """A linear system that must be positive definite failed to factor."""


class DimensionMismatch(LpdplError):
    """A vector or matrix does not match the model or operand shape."""


class MissingMetadata(LpdplError):
    """A fold scheme needs subject, repetition or split ids that are absent."""


class DecodeError(LpdplError):
    """An image file could not be decoded."""


class ManifestError(LpdplError):
    """A corpus manifest or one of its records is invalid."""


class DatasetError(LpdplError):
    """A class-partitioned dataset violates its invariants."""


class ModelIOError(LpdplError):
    """A model file could not be read or written."""


class CorruptModel(LpdplError):
    """A model file is truncated, malformed or fails its checksum."""


class VersionMismatch(LpdplError):
    """A model file was written by an unsupported format version."""


class EmptyReport(LpdplError):
    """An aggregate was requested from an evaluation with zero folds."""
