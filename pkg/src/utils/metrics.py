"""In-process metrics collection for timings and counters."""

from collections import defaultdict
from typing import Dict, List, Optional
import threading

import numpy as np
import structlog

logger = structlog.get_logger()


def _key(metric_name: str, tags: Optional[Dict[str, str]]) -> str:
    if not tags:
        return metric_name
    tag_str = ":".join(f"{k}={v}" for k, v in sorted(tags.items()))
    return f"{metric_name}:{tag_str}"


class MetricsCollector:
    """Collect and aggregate metrics; safe to share across threads."""

    def __init__(self):
        """Initialize metrics collector."""
        self._lock = threading.Lock()
        self._counters: Dict[str, int] = defaultdict(int)
        self._histograms: Dict[str, List[float]] = defaultdict(list)

    def increment_counter(self, metric_name: str, value: int = 1, tags: Optional[Dict[str, str]] = None):
        """Increment a counter metric.

        Args:
            metric_name: Metric name
            value: Value to increment
            tags: Optional tags
        """
        with self._lock:
            self._counters[_key(metric_name, tags)] += value

    def record_histogram(self, metric_name: str, value: float, tags: Optional[Dict[str, str]] = None):
        """Record a histogram value.

        Args:
            metric_name: Metric name
            value: Histogram value
            tags: Optional tags
        """
        with self._lock:
            self._histograms[_key(metric_name, tags)].append(float(value))

    def get_counter(self, metric_name: str, tags: Optional[Dict[str, str]] = None) -> int:
        """Get counter value."""
        with self._lock:
            return self._counters.get(_key(metric_name, tags), 0)

    def get_histogram_stats(self, metric_name: str, tags: Optional[Dict[str, str]] = None) -> Dict[str, float]:
        """Get histogram statistics.

        Args:
            metric_name: Metric name
            tags: Optional tags

        Returns:
            Dictionary with count, min, max, p50, p95, p99 and mean; empty if
            nothing was recorded
        """
        with self._lock:
            values = list(self._histograms.get(_key(metric_name, tags), []))

        if not values:
            return {}

        data = np.asarray(values)
        return {
            "count": int(data.size),
            "min": float(data.min()),
            "max": float(data.max()),
            "p50": float(np.percentile(data, 50)),
            "p95": float(np.percentile(data, 95)),
            "p99": float(np.percentile(data, 99)),
            "mean": float(data.mean()),
        }

    def reset(self):
        """Drop all recorded values."""
        with self._lock:
            self._counters.clear()
            self._histograms.clear()
        logger.debug("metrics_reset")
