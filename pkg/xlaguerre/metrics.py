"""Prometheus metrics for verification runs.

Written in text-exposition format with `verify --metrics-out PATH`; nothing here touches
stdout or exit codes.
"""

from __future__ import annotations

import logging

logger = logging.getLogger("xlaguerre.metrics")

_metrics_registered = False
_registry = None
_checks_total = None
_check_duration = None


def _ensure_metrics():
    global _metrics_registered, _registry, _checks_total, _check_duration
    if _metrics_registered:
        return
    try:
        from prometheus_client import CollectorRegistry, Counter, Histogram

        _registry = CollectorRegistry()
        _checks_total = Counter(
            "xlaguerre_checks_total",
            "Verification checks by suite and outcome",
            ["suite", "status"],  # pass, fail, skip
            registry=_registry,
        )
        _check_duration = Histogram(
            "xlaguerre_check_duration_seconds",
            "Wall time of a single verification check",
            ["suite"],
            buckets=[0.001, 0.01, 0.05, 0.1, 0.5, 1, 5, 30, 120],
            registry=_registry,
        )
    except Exception:
        logger.debug("prometheus_client unavailable; metrics disabled")
    _metrics_registered = True


def record_check(suite: str, status: str, duration_seconds: float) -> None:
    _ensure_metrics()
    if _checks_total is not None:
        _checks_total.labels(suite=suite, status=status).inc()
    if _check_duration is not None:
        _check_duration.labels(suite=suite).observe(duration_seconds)


def write_metrics(path: str) -> bool:
    """Write the registry to path; False when metrics are unavailable."""
    _ensure_metrics()
    if _registry is None:
        return False
    from prometheus_client import write_to_textfile

    write_to_textfile(path, _registry)
    logger.info("metrics_written", extra={"path": path})
    return True
