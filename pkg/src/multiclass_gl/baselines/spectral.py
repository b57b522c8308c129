"""
Spectral clustering baseline: k-means on the smallest eigenvectors of L_s.
"""

import logging
from typing import Optional

import numpy as np

from ..datasets.base import DataSet
from ..exceptions import ContractError
from ..graph.base import SimilarityGraph
from .base import ClusteringMethod, ClusterResult
from .eigen import smallest_eigenpairs
from .kmeans import kmeans

logger = logging.getLogger(__name__)


def spectral_embedding(
    graph: SimilarityGraph, n_eigenvectors: int, normalize_rows: bool = False
) -> np.ndarray:
    """Rows of the n_eigenvectors smallest eigenvectors of L_s, one per vertex."""
    if not graph.is_connected():
        logger.warning(
            "Graph has %d connected components; spectral embedding may be degenerate",
            graph.n_components(),
        )
    _, vectors = smallest_eigenpairs(graph.normalized_laplacian(), n_eigenvectors)
    # fix the sign of each eigenvector so the embedding is reproducible
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    vectors = vectors * np.where(signs == 0, 1.0, signs)
    if normalize_rows:
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        vectors = vectors / np.where(norms == 0, 1.0, norms)
    return vectors


def spectral_clustering(
    graph: SimilarityGraph,
    n_clusters: int,
    n_eigenvectors: int,
    seed: int = 0,
    restarts: int = 10,
    normalize_rows: bool = False,
) -> ClusterResult:
    """k-means on the spectral embedding of the graph."""
    if n_eigenvectors < 1:
        raise ContractError(f"Need at least one eigenvector, got {n_eigenvectors}")
    embedding = spectral_embedding(graph, n_eigenvectors, normalize_rows)
    return kmeans(embedding, n_clusters, restarts=restarts, seed=seed)


class SpectralClustering(ClusteringMethod):
    def fit_predict(
        self,
        dataset: DataSet,
        graph: Optional[SimilarityGraph],
        n_clusters: int,
        seed: int,
    ) -> ClusterResult:
        if graph is None:
            raise ContractError("Spectral clustering needs a similarity graph")
        return spectral_clustering(
            graph,
            n_clusters,
            self.config.get("n_eigenvectors", n_clusters),
            seed=seed,
            restarts=self.config.get("restarts", 10),
            normalize_rows=self.config.get("normalize_rows", False),
        )

    def get_method_name(self) -> str:
        return "spectral"

    @property
    def needs_graph(self) -> bool:
        return True
