"""
Scoring and aggregation of repeated runs.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from sklearn import metrics as sk_metrics

from ..baselines.alignment import align_labels, apply_alignment
from ..exceptions import ContractError


def accuracy(pred: np.ndarray, truth: np.ndarray, mask: Optional[np.ndarray] = None) -> float:
    """Fraction of points with pred == truth, optionally restricted to mask."""
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.shape != truth.shape:
        raise ContractError(f"Prediction has {pred.size} entries, truth has {truth.size}")
    if mask is not None:
        pred, truth = pred[mask], truth[mask]
    if pred.size == 0:
        raise ContractError("Cannot score an empty prediction")
    return float(np.count_nonzero(pred == truth)) / pred.size


def confusion_matrix(pred: np.ndarray, truth: np.ndarray, n_classes: int) -> np.ndarray:
    """K×K counts with rows indexed by true class and columns by prediction."""
    return sk_metrics.confusion_matrix(truth, pred, labels=np.arange(n_classes))


def aligned_accuracy(pred: np.ndarray, truth: np.ndarray, n_classes: int) -> float:
    """Accuracy after mapping cluster ids onto classes by optimal assignment."""
    perm = align_labels(pred, truth, n_classes)
    return accuracy(apply_alignment(pred, perm), truth)


@dataclass
class EvalReport:
    accuracy: float
    stddev: float
    runs: int
    mean_runtime_s: float
    best_accuracy: float
    best_run: int
    per_run_accuracy: List[float] = field(default_factory=list)
    confusion: Optional[np.ndarray] = None

    def to_dict(
        self,
        dataset: str,
        method: str,
        params: Dict[str, Any],
        include_runtime: bool = False,
    ) -> Dict[str, Any]:
        return {
            "dataset": dataset,
            "method": method,
            "params": params,
            "runs": self.runs,
            "mean_accuracy": self.accuracy,
            "stddev": self.stddev,
            "mean_runtime_s": self.mean_runtime_s if include_runtime else None,
            "best_accuracy": self.best_accuracy,
            "best_run": self.best_run,
            "per_run_accuracy": list(self.per_run_accuracy),
            "confusion": None if self.confusion is None else self.confusion.tolist(),
        }


def aggregate(
    accuracies: Sequence[float],
    runtimes: Sequence[float],
    confusion: Optional[np.ndarray] = None,
) -> EvalReport:
    """Mean, sample standard deviation and mean runtime over runs.

    ``confusion`` is carried through unchanged; callers pass the table of
    the best run so its row sums stay equal to the class sizes.
    """
    acc = np.asarray(accuracies, dtype=np.float64)
    if acc.size == 0:
        raise ContractError("Aggregation needs at least one run")
    if len(runtimes) != acc.size:
        raise ContractError(f"{acc.size} accuracies but {len(runtimes)} runtimes")
    stddev = float(np.std(acc, ddof=1)) if acc.size > 1 else 0.0
    best = int(np.argmax(acc))
    return EvalReport(
        accuracy=float(np.mean(acc)),
        stddev=stddev,
        runs=int(acc.size),
        mean_runtime_s=float(np.mean(runtimes)),
        best_accuracy=float(acc[best]),
        best_run=best,
        per_run_accuracy=acc.tolist(),
        confusion=confusion,
    )
