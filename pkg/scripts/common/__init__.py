"""
Common utilities for the study scripts.

This module provides shared functionality across all study scripts.
"""

from .run_metrics import (
    MetricNames,
    MetricUnits,
    RunMetrics,
    get_metrics,
    reset_metrics,
)

__all__ = [
    'MetricNames',
    'MetricUnits',
    'RunMetrics',
    'get_metrics',
    'reset_metrics',
]
