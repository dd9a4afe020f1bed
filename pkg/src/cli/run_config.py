"""Complete description of one command-line run."""

import json
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from src.config import settings
from src.errors import ManifestError
from src.models import Hyperparameters

COMMANDS = ("train", "eval", "classify", "sweep", "inspect", "dictsize")


class RunConfig(BaseModel):
    """Everything a command needs; a run is reproducible from this and the seed."""

    command: Literal["train", "eval", "classify", "sweep", "inspect", "dictsize"]
    manifest: Optional[Path] = None
    hyperparameters: Hyperparameters = Field(default_factory=Hyperparameters)
    scheme: str = "conventional"
    folds: Optional[int] = Field(default=None, ge=2)
    seed: int = Field(default_factory=lambda: settings.seed)
    out: Path = Path("out")
    grid: List[str] = Field(default_factory=list)
    workers: Optional[int] = Field(default=None, ge=1)
    features: Optional[Literal["hog", "pixels"]] = None
    baseline: Literal["lpdpl", "dpl"] = "lpdpl"
    model: Optional[Path] = None
    images: List[Path] = Field(default_factory=list)
    m_values: List[int] = Field(default_factory=list)
    compare_dpl: bool = False
    plot: bool = False

    class Config:
        """Pydantic config."""
        frozen = True

    @model_validator(mode="after")
    def check_command_inputs(self) -> "RunConfig":
        if self.command in ("train", "eval", "sweep", "dictsize") and self.manifest is None:
            raise ValueError(f"'{self.command}' needs --manifest")
        if self.command == "sweep" and not self.grid:
            raise ValueError("'sweep' needs at least one --grid spec")
        if self.command in ("classify", "inspect") and self.model is None:
            raise ValueError(f"'{self.command}' needs --model")
        if self.command == "classify" and not self.images:
            raise ValueError("'classify' needs at least one image path")
        if self.command == "dictsize" and not self.m_values:
            raise ValueError("'dictsize' needs --m-values")
        return self

    def effective_hyperparameters(self) -> Hyperparameters:
        """Hyperparameters with the selected baseline applied."""
        if self.baseline == "dpl":
            return self.hyperparameters.as_dpl()
        return self.hyperparameters


def load_run_config_file(path: Path) -> dict:
    """Raw RunConfig fields from a JSON file (validated after CLI overrides).

    Raises:
        ManifestError: If the file is missing or not a JSON object
    """
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise ManifestError(f"run config not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ManifestError(f"run config {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ManifestError(f"run config {path} must be a JSON object")
    return data


def build_run_config(file_values: dict, overrides: dict, hp_overrides: dict) -> RunConfig:
    """Merge config-file values with command-line overrides.

    None values in either override mapping mean "not given".

    Raises:
        ValueError: If the merged configuration is invalid
    """
    values = dict(file_values)
    values.update({k: v for k, v in overrides.items() if v is not None})

    hp_values = dict(values.get("hyperparameters") or {})
    hp_values.update({k: v for k, v in hp_overrides.items() if v is not None})
    values["hyperparameters"] = hp_values
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise ValueError(f"invalid run configuration: {e}") from e
