"""Process-wide structlog configuration."""

import logging
import sys
from typing import Optional

import structlog

from src.config import settings


def configure_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> None:
    """Configure structured logging to stderr.

    Args:
        level: Log level name (default from settings)
        fmt: "json" or "text" (default from settings)
    """
    level = (level or settings.log_level).upper()
    fmt = fmt or settings.log_format
    log_level = getattr(logging, level, logging.INFO)

    structlog.configure(
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.processors.JSONRenderer() if fmt == "json" else structlog.dev.ConsoleRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
