"""Logging and metrics utilities."""

from src.utils.logging_config import configure_logging
from src.utils.metrics import MetricsCollector

__all__ = ["configure_logging", "MetricsCollector"]
