#!/usr/bin/env python3
"""
Run Metrics Helper Module

Collects step timings and counters for study runs in-process. Metrics are
logged and can be written as JSON next to a report; nothing is sent anywhere.
"""

import json
import logging
import time
from contextlib import contextmanager
from functools import wraps
from pathlib import Path
from typing import Any, Dict, List, Optional, Union


class MetricNames:
    """Standard metric names for study runs."""
    STEP_DURATION = 'StepDuration'
    CELLS_COMPUTED = 'CellsComputed'
    WEIGHT_VECTORS = 'WeightVectors'
    REFERENCE_CALLS = 'ReferenceCalls'
    ERRORS = 'Errors'


class MetricUnits:
    SECONDS = 'Seconds'
    COUNT = 'Count'
    NONE = 'None'


class RunMetrics:
    """
    In-process metrics collector.

    Usage:
        metrics = RunMetrics()

        metrics.put_metric('CellsComputed', 42, unit='Count')

        with metrics.timer('Reference'):
            compute_reference()

        @metrics.timed('Weights')
        def build_weights():
            pass
    """

    def __init__(self, enabled: bool = True, logger: Optional[logging.Logger] = None):
        """
        Args:
            enabled: Whether to record anything
            logger: Logger instance for debug output
        """
        self.enabled = enabled
        self.logger = logger or logging.getLogger(__name__)
        self._records: List[Dict[str, Any]] = []

    def put_metric(
        self,
        name: str,
        value: Union[int, float],
        unit: str = MetricUnits.NONE,
        dimensions: Optional[Dict[str, str]] = None
    ) -> bool:
        """
        Record a metric.

        Returns:
            True if the metric was recorded
        """
        if not self.enabled:
            return False
        record = {'name': name, 'value': value, 'unit': unit, 'dimensions': dict(dimensions or {})}
        self._records.append(record)
        self.logger.debug(f"Metric: {name}={value} {unit} (dimensions: {record['dimensions']})")
        return True

    @contextmanager
    def timer(self, step_name: str, metric_name: str = MetricNames.STEP_DURATION):
        """
        Context manager timing a block; records an error count if it raises.

        Usage:
            with metrics.timer('Table'):
                run_table()
        """
        start_time = time.perf_counter()
        error_occurred = False
        try:
            yield
        except Exception:
            error_occurred = True
            raise
        finally:
            duration = time.perf_counter() - start_time
            self.put_metric(metric_name, duration, MetricUnits.SECONDS, {'Step': step_name})
            if error_occurred:
                self.put_metric(MetricNames.ERRORS, 1, MetricUnits.COUNT, {'Step': step_name})

    def timed(self, step_name: str, metric_name: str = MetricNames.STEP_DURATION):
        """Decorator form of timer()."""
        def decorator(func):
            @wraps(func)
            def wrapper(*args, **kwargs):
                with self.timer(step_name, metric_name):
                    return func(*args, **kwargs)
            return wrapper
        return decorator

    def total(self, name: str) -> float:
        """Sum of all recorded values of one metric."""
        return sum(r['value'] for r in self._records if r['name'] == name)

    def to_dict(self) -> Dict[str, Any]:
        return {'metrics': list(self._records)}

    def summary(self) -> str:
        """One line per step duration plus totals of counters."""
        lines = []
        for r in self._records:
            if r['name'] == MetricNames.STEP_DURATION:
                lines.append(f"{r['dimensions'].get('Step', '?'):20s} {r['value']:.3f} s")
        for name in (MetricNames.CELLS_COMPUTED, MetricNames.WEIGHT_VECTORS, MetricNames.REFERENCE_CALLS,
                     MetricNames.ERRORS):
            count = self.total(name)
            if count:
                lines.append(f"{name:20s} {int(count)}")
        return "\n".join(lines)

    def save(self, output_path: Path) -> bool:
        """Write metrics as JSON."""
        try:
            output_path = Path(output_path)
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, 'w') as f:
                json.dump(self.to_dict(), f, indent=2)
            self.logger.info(f"Metrics saved to: {output_path}")
            return True
        except OSError as e:
            self.logger.error(f"Failed to save metrics: {e}")
            return False


_default_metrics: Optional[RunMetrics] = None


def get_metrics(enabled: bool = True, logger: Optional[logging.Logger] = None) -> RunMetrics:
    """Get or create the default metrics instance."""
    global _default_metrics
    if _default_metrics is None:
        _default_metrics = RunMetrics(enabled=enabled, logger=logger)
    return _default_metrics


def reset_metrics() -> None:
    """Reset the default metrics instance (useful for testing)."""
    global _default_metrics
    _default_metrics = None
