"""
Graph layer for multiclass GL segmentation.

This layer handles:
- Exact kNN search with deterministic tie-breaking
- Local-scaling similarity weights and union symmetrization
- Degrees, normalized edge coefficients and (small-n) dense Laplacians
- Binary graph cache persistence
"""

from .base import GraphConfig, KnnResult, SimilarityGraph
from .builder import (
    build_graph,
    degrees_and_laplacians,
    similarity_weights,
    symmetrize,
)
from .cache import load_graph, save_graph
from .knn import knn_search, local_scales

__all__ = [
    "GraphConfig",
    "KnnResult",
    "SimilarityGraph",
    "build_graph",
    "degrees_and_laplacians",
    "knn_search",
    "load_graph",
    "local_scales",
    "save_graph",
    "similarity_weights",
    "symmetrize",
]
