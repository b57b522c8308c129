"""
Seeded sampling of fidelity (labeled) vertices.
"""

import logging
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..exceptions import ConfigError, ContractError
from .base import FidelitySet

logger = logging.getLogger(__name__)


class FidelitySpec(BaseModel):
    """Either ``per_class`` labeled points per class or a ``fraction`` of all points."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    mode: Literal["per_class", "fraction"]
    count: Optional[int] = Field(None, ge=1)
    fraction: Optional[float] = Field(None, gt=0, le=1)
    seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_mode(self) -> "FidelitySpec":
        if self.mode == "per_class" and self.count is None:
            raise ValueError("per_class fidelity needs count")
        if self.mode == "fraction" and self.fraction is None:
            raise ValueError("fraction fidelity needs fraction")
        return self

    @classmethod
    def per_class(cls, count: int, seed: int = 0) -> "FidelitySpec":
        return cls(mode="per_class", count=count, seed=seed)

    @classmethod
    def of_fraction(cls, fraction: float, seed: int = 0) -> "FidelitySpec":
        return cls(mode="fraction", fraction=fraction, seed=seed)


def sample_fidelity(
    labels: np.ndarray, spec: FidelitySpec, mu: float, n_classes: Optional[int] = None
) -> FidelitySet:
    """Sample distinct labeled vertices and attach weight mu to each."""
    if labels is None:
        raise ContractError("Fidelity sampling needs ground-truth labels")
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.size
    k = int(n_classes if n_classes is not None else labels.max() + 1)
    rng = np.random.default_rng(spec.seed)

    if spec.mode == "per_class":
        chosen = []
        for c in range(k):
            members = np.flatnonzero(labels == c)
            if spec.count > members.size:
                raise ConfigError(
                    f"Requested {spec.count} fidelity points for class {c}, "
                    f"which has only {members.size}"
                )
            chosen.append(rng.choice(members, size=spec.count, replace=False))
        vertices = np.concatenate(chosen)
    else:
        size = int(np.floor(spec.fraction * n))
        vertices = rng.choice(n, size=size, replace=False)

    vertices = np.sort(vertices)
    logger.debug("Sampled %d fidelity points (%s, seed=%d)", vertices.size, spec.mode, spec.seed)
    return FidelitySet(vertices, labels[vertices], mu, n_classes=k)
