"""
Evaluation and artifact layer.

This layer handles:
- Accuracy, confusion matrices and multi-run aggregation
- JSON reports and CSV traces
- SVG scatter plots and energy curves, per-class image masks
"""

from .masks import emit_class_masks
from .metrics import EvalReport, accuracy, aggregate, aligned_accuracy, confusion_matrix
from .report import write_report, write_timings
from .svg import emit_energy_plot, emit_scatter_svg

__all__ = [
    "EvalReport",
    "accuracy",
    "aggregate",
    "aligned_accuracy",
    "confusion_matrix",
    "emit_class_masks",
    "emit_energy_plot",
    "emit_scatter_svg",
    "write_report",
    "write_timings",
]
