"""
k-means baseline on raw feature vectors.
"""

from typing import Optional

import numpy as np
from sklearn.cluster import KMeans

from ..datasets.base import DataSet
from ..exceptions import ConfigError
from ..graph.base import SimilarityGraph
from .base import ClusteringMethod, ClusterResult

MAX_LLOYD_ITERATIONS = 300


def kmeans(points: np.ndarray, n_clusters: int, restarts: int = 10, seed: int = 0) -> ClusterResult:
    """Lloyd iterations from k-means++ seeding; best inertia over seeded restarts.

    Each restart stops once assignments no longer change (tol=0) or after
    300 iterations; empty clusters are relocated to far-away points.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if not 1 <= n_clusters <= points.shape[0]:
        raise ConfigError(f"Cluster count {n_clusters} must lie in [1, n={points.shape[0]}]")
    if restarts < 1:
        raise ConfigError(f"restarts must be >= 1, got {restarts}")

    model = KMeans(
        n_clusters=n_clusters,
        init="k-means++",
        n_init=restarts,
        max_iter=MAX_LLOYD_ITERATIONS,
        tol=0.0,
        algorithm="lloyd",
        random_state=seed,
    )
    assignments = model.fit_predict(points)
    return ClusterResult(assignments=assignments.astype(np.int64), inertia=float(model.inertia_))


class KMeansClustering(ClusteringMethod):
    def fit_predict(
        self,
        dataset: DataSet,
        graph: Optional[SimilarityGraph],
        n_clusters: int,
        seed: int,
    ) -> ClusterResult:
        return kmeans(dataset.points, n_clusters, self.config.get("restarts", 10), seed)

    def get_method_name(self) -> str:
        return "kmeans"
