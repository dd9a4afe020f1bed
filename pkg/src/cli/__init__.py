"""Command-line interface."""

from src.cli.main import build_parser, main
from src.cli.run_config import RunConfig

__all__ = ["build_parser", "main", "RunConfig"]
