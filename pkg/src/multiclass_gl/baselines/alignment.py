"""
Cluster-to-class alignment by optimal assignment on the contingency table.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..exceptions import ContractError


def contingency(pred: np.ndarray, truth: np.ndarray, n_classes: int) -> np.ndarray:
    """K×K table; entry [c, t] counts points in cluster c with class t."""
    pred = np.asarray(pred, dtype=np.int64)
    truth = np.asarray(truth, dtype=np.int64)
    if pred.shape != truth.shape:
        raise ContractError(f"Prediction has {pred.size} entries, truth has {truth.size}")
    for name, values in (("prediction", pred), ("truth", truth)):
        if values.size and (values.min() < 0 or values.max() >= n_classes):
            raise ContractError(f"{name} labels must lie in [0, {n_classes})")
    table = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(table, (pred, truth), 1)
    return table


def _best_total(table: np.ndarray) -> int:
    if table.size == 0:
        return 0
    rows, cols = linear_sum_assignment(table, maximize=True)
    return int(table[rows, cols].sum())


def align_labels(pred: np.ndarray, truth: np.ndarray, n_classes: int) -> np.ndarray:
    """Permutation perm (cluster → class) maximizing the matched count.

    Among optimal permutations the lexicographically smallest is returned:
    each cluster in turn takes the smallest class that still admits an
    optimal completion.
    """
    table = contingency(pred, truth, n_classes)
    target = _best_total(table)

    perm = np.full(n_classes, -1, dtype=np.int64)
    free = list(range(n_classes))
    matched = 0
    for cluster in range(n_classes):
        rest_rows = list(range(cluster + 1, n_classes))
        for cls in free:
            remaining = [c for c in free if c != cls]
            completion = _best_total(table[np.ix_(rest_rows, remaining)])
            if matched + table[cluster, cls] + completion == target:
                perm[cluster] = cls
                matched += int(table[cluster, cls])
                free.remove(cls)
                break
    return perm


def apply_alignment(pred: np.ndarray, perm: np.ndarray) -> np.ndarray:
    return np.asarray(perm)[np.asarray(pred, dtype=np.int64)]
