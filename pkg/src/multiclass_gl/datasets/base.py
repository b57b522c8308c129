"""
Dataset and fidelity-set records.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

import numpy as np

from ..exceptions import ContractError, DataFormatError

logger = logging.getLogger(__name__)


@dataclass
class DataSet:
    """Feature matrix with optional ground-truth labels in [0, n_classes)."""

    points: np.ndarray
    labels: Optional[np.ndarray] = None
    n_classes: int = 2
    name: str = "dataset"

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.ndim == 1:
            self.points = self.points[:, None]
        if self.points.ndim != 2 or self.points.shape[0] < 2 or self.points.shape[1] < 1:
            raise DataFormatError(
                f"DataSet needs an n×d matrix with n >= 2, d >= 1; got {self.points.shape}"
            )
        if not np.all(np.isfinite(self.points)):
            raise DataFormatError("DataSet features must be finite")
        if self.n_classes < 2:
            raise ContractError(f"Class count must be >= 2, got {self.n_classes}")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape != (self.n,):
                raise ContractError(
                    f"Label vector has shape {self.labels.shape}, expected ({self.n},)"
                )
            if self.labels.min() < 0 or self.labels.max() >= self.n_classes:
                raise ContractError(f"Labels must lie in [0, {self.n_classes})")
            missing = np.setdiff1d(np.arange(self.n_classes), self.labels)
            if missing.size:
                raise ContractError(f"Classes without any point: {missing.tolist()}")

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def class_counts(self) -> np.ndarray:
        if self.labels is None:
            raise ContractError(f"{self.name} has no ground-truth labels")
        return np.bincount(self.labels, minlength=self.n_classes)


@dataclass
class FidelitySet:
    """Semi-supervised anchors: vertex, class and weight μ per entry."""

    vertices: np.ndarray
    classes: np.ndarray
    mu: np.ndarray
    n_classes: int = field(default=2)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=np.int64).reshape(-1)
        self.classes = np.asarray(self.classes, dtype=np.int64).reshape(-1)
        self.mu = np.broadcast_to(
            np.asarray(self.mu, dtype=np.float64), self.vertices.shape
        ).copy()
        if not (self.vertices.shape == self.classes.shape == self.mu.shape):
            raise ContractError("Fidelity vertices, classes and weights differ in length")
        if np.unique(self.vertices).size != self.vertices.size:
            raise ContractError("Fidelity vertices must be distinct")
        if self.size and (self.classes.min() < 0 or self.classes.max() >= self.n_classes):
            raise ContractError(f"Fidelity classes must lie in [0, {self.n_classes})")
        if np.any(self.mu <= 0):
            raise ContractError("Fidelity weights must be positive")
        if self.size:
            missing = np.setdiff1d(np.arange(self.n_classes), self.classes)
            if missing.size:
                logger.warning("Fidelity set has no anchor for classes %s", missing.tolist())

    @classmethod
    def from_entries(
        cls, entries: Iterable[Tuple[int, int, float]], n_classes: int
    ) -> "FidelitySet":
        rows = list(entries)
        if not rows:
            return cls.empty(n_classes)
        vertices, classes, mu = zip(*rows)
        return cls(np.array(vertices), np.array(classes), np.array(mu), n_classes)

    @classmethod
    def empty(cls, n_classes: int) -> "FidelitySet":
        return cls(
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.float64),
            n_classes,
        )

    @property
    def size(self) -> int:
        return int(self.vertices.size)

    def check_bounds(self, n: int) -> None:
        if self.size and (self.vertices.min() < 0 or self.vertices.max() >= n):
            raise ContractError(f"Fidelity vertex index out of range for n={n}")

    def dense(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Per-vertex (μᵢ, ûᵢ) arrays; μᵢ = 0 and ûᵢ = 0 off the fidelity set."""
        self.check_bounds(n)
        mu = np.zeros(n)
        target = np.zeros(n)
        mu[self.vertices] = self.mu
        target[self.vertices] = self.classes.astype(np.float64)
        return mu, target
