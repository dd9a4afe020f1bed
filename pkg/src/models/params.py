"""Hyperparameter and feature-pipeline value objects.

These are serialized verbatim into the model file header, so every field must
round-trip through pydantic JSON.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field

from src.config import settings


class Hyperparameters(BaseModel):
    """Weights and iteration caps for the dictionary pair objective."""

    m: int = Field(default_factory=lambda: settings.m, ge=1)
    lambda1: float = Field(default_factory=lambda: settings.lambda1, ge=0.0)
    lambda2: float = Field(default_factory=lambda: settings.lambda2, ge=0.0)
    lambda3: float = Field(default_factory=lambda: settings.lambda3, ge=0.0)
    gamma: float = Field(default_factory=lambda: settings.gamma, gt=0.0)
    rho: float = Field(default_factory=lambda: settings.rho, gt=0.0)
    outer_iters: int = Field(default_factory=lambda: settings.outer_iters, ge=0)
    admm_iters: int = Field(default_factory=lambda: settings.admm_iters, ge=1)
    admm_tol: float = Field(default_factory=lambda: settings.admm_tol, ge=0.0)
    tol: float = Field(default_factory=lambda: settings.tol, ge=0.0)

    # Reproduce the printed A-update (W^T W without lambda2) for comparison runs
    compat_eq7: bool = False
    # Residual-balancing ADMM penalty; fixed rho when False
    adaptive_rho: bool = False
    # Weight on the label term at classification time; 0 gives residual-only
    label_weight: float = Field(default=1.0, ge=0.0)

    class Config:
        """Pydantic config."""
        frozen = True

    def as_dpl(self) -> "Hyperparameters":
        """Return the plain dictionary-pair baseline: no label term anywhere."""
        return self.model_copy(update={"lambda2": 0.0, "label_weight": 0.0})


class HogConfig(BaseModel):
    """Histogram of oriented gradients settings."""

    cell_size: int = Field(default_factory=lambda: settings.hog_cell_size, ge=1)
    num_bins: int = Field(default_factory=lambda: settings.hog_num_bins, ge=2)
    signed: bool = Field(default_factory=lambda: settings.hog_signed)
    normalization: Literal["global", "cell"] = Field(
        default_factory=lambda: settings.hog_normalization
    )
    binning: Literal["soft", "hard"] = "soft"

    class Config:
        """Pydantic config."""
        frozen = True

    @property
    def angle_range(self) -> float:
        """Orientation range in degrees."""
        return 360.0 if self.signed else 180.0

    def grid_shape(self, height: int = 32, width: int = 32) -> tuple:
        """Complete-cell grid for an image; partial edge cells are dropped."""
        return height // self.cell_size, width // self.cell_size

    def feature_length(self, height: int = 32, width: int = 32) -> int:
        """Descriptor length for an image of the given size."""
        cells_y, cells_x = self.grid_shape(height, width)
        return cells_y * cells_x * self.num_bins


class FeaturePipelineConfig(BaseModel):
    """How a raw image becomes a feature vector."""

    kind: Literal["hog", "pixels"] = "hog"
    preprocess: Literal["crop", "resize_only", "grayscale"] = "crop"
    hog: HogConfig = Field(default_factory=HogConfig)

    class Config:
        """Pydantic config."""
        frozen = True

    def feature_length(self) -> int:
        """Length n of the vectors this pipeline produces."""
        if self.kind == "pixels":
            return 32 * 32
        return self.hog.feature_length()


def build_hyperparameters(overrides: Optional[dict] = None) -> Hyperparameters:
    """Build hyperparameters from settings defaults plus non-None overrides.

    Args:
        overrides: Field name to value; None values are ignored

    Returns:
        Validated Hyperparameters
    """
    values = {k: v for k, v in (overrides or {}).items() if v is not None}
    return Hyperparameters(**values)
