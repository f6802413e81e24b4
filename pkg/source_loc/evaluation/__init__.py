"""Evaluation of source predictions against ground-truth seeds."""

from .metrics import (
    Confusion,
    Metric,
    aggregate,
    auc,
    confusion,
    evaluate_pair,
    point_metrics,
    select_threshold
)

__all__ = [
    'Confusion',
    'Metric',
    'aggregate',
    'auc',
    'confusion',
    'evaluate_pair',
    'point_metrics',
    'select_threshold'
]
