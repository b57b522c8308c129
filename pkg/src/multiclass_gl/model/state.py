"""
The evolving per-vertex state.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ContractError
from .potential import label_of

CLAMP_MARGIN = 1e-9


@dataclass
class StateVector:
    """Per-vertex scalar field u with values in [−½ + 1e−9, K − ½ − 1e−9]."""

    u: np.ndarray
    n_classes: int

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=np.float64).reshape(-1)
        if self.n_classes < 2:
            raise ContractError(f"Class count must be >= 2, got {self.n_classes}")

    @property
    def n(self) -> int:
        return int(self.u.size)

    @property
    def lower(self) -> float:
        return -0.5 + CLAMP_MARGIN

    @property
    def upper(self) -> float:
        return self.n_classes - 0.5 - CLAMP_MARGIN

    def labels(self) -> np.ndarray:
        return label_of(self.u, self.n_classes)

    def clamped(self) -> "StateVector":
        return StateVector(np.clip(self.u, self.lower, self.upper), self.n_classes)

    def copy(self) -> "StateVector":
        return StateVector(self.u.copy(), self.n_classes)

