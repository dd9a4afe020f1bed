"""Configuration management for the LpDPL digit recognizer.

Uses pydantic BaseSettings to load configuration from environment variables
(prefix ``LPDPL_``) and an optional ``.env`` file.
"""

from pydantic_settings import BaseSettings
from pydantic import Field, validator


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Dictionary learning defaults
    m: int = Field(
        default=340,
        description="Atoms per class sub-dictionary",
    )
    lambda1: float = Field(
        default=1e-2,
        description="Weight of the cross-class suppression term",
    )
    lambda2: float = Field(
        default=1.0,
        description="Weight of the label (linear classifier) term",
    )
    lambda3: float = Field(
        default=1e-1,
        description="Weight of the code relaxation term ||PX - A||",
    )
    gamma: float = Field(
        default=1e-4,
        description="Ridge jitter for the P and W solves",
    )
    rho: float = Field(
        default=1.0,
        description="ADMM penalty for the synthesis dictionary update",
    )
    outer_iters: int = Field(
        default=10,
        description="Cap on outer alternating-minimization iterations",
    )
    admm_iters: int = Field(
        default=20,
        description="Cap on ADMM iterations per D update",
    )
    admm_tol: float = Field(
        default=1e-6,
        description="ADMM stop: ||D - S||_F / ||D||_F below this",
    )
    tol: float = Field(
        default=1e-4,
        description="Outer stop: relative objective decrease below this",
    )

    # HOG defaults
    hog_cell_size: int = Field(default=3, description="Pixels per HOG cell side")
    hog_num_bins: int = Field(default=9, description="Orientation bins per cell")
    hog_signed: bool = Field(default=False, description="Use 0-360 orientations")
    hog_normalization: str = Field(
        default="global",
        description="Min-max normalization scope (global or cell)",
    )

    # Evaluation
    folds: int = Field(default=10, description="Folds for conventional CV")
    seed: int = Field(default=0, description="Default random seed")
    workers: int = Field(
        default=1,
        description="Max concurrent classes / folds / samples",
    )

    # Logging
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)"
    )
    log_format: str = Field(
        default="text",
        description="Log format (json or text)"
    )

    @validator("lambda1", "lambda2", "lambda3")
    def weights_must_be_nonnegative(cls, v):
        """Ensure regularization weights are non-negative."""
        if v < 0:
            raise ValueError("Regularization weights must be non-negative")
        return v

    @validator("gamma", "rho")
    def jitter_must_be_positive(cls, v):
        """Ensure gamma and rho are strictly positive."""
        if v <= 0:
            raise ValueError("gamma and rho must be positive")
        return v

    @validator("hog_normalization")
    def normalization_scope_known(cls, v):
        """Ensure the HOG normalization scope is supported."""
        if v not in ("global", "cell"):
            raise ValueError(f"Unknown HOG normalization: {v}")
        return v

    class Config:
        """Pydantic config."""
        env_prefix = "LPDPL_"
        env_file = ".env"
        case_sensitive = False


# Global settings instance
settings = Settings()
