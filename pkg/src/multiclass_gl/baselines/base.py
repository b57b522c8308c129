"""
Base clustering classes and interfaces.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..datasets.base import DataSet
from ..graph.base import SimilarityGraph


@dataclass
class ClusterResult:
    """Cluster ids in [0, K) and, for k-means, the within-cluster inertia."""

    assignments: np.ndarray
    inertia: float = 0.0


class ClusteringMethod(ABC):
    """Base class for unsupervised baselines."""

    def __init__(self, config: Dict[str, Any]):
        self.config = config

    @abstractmethod
    def fit_predict(
        self,
        dataset: DataSet,
        graph: Optional[SimilarityGraph],
        n_clusters: int,
        seed: int,
    ) -> ClusterResult:
        """Cluster the dataset (or its graph) into n_clusters groups."""
        pass

    @abstractmethod
    def get_method_name(self) -> str:
        """Return the name of this baseline."""
        pass

    @property
    def needs_graph(self) -> bool:
        return False
