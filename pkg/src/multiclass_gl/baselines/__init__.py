"""
Reference clustering methods scored against the multiclass GL solver.

This layer handles:
- k-means on raw features
- Spectral clustering on the smallest eigenvectors of L_s
- Cluster-to-class alignment for scoring unsupervised output
"""

from .alignment import align_labels, apply_alignment
from .base import ClusteringMethod, ClusterResult
from .eigen import smallest_eigenpairs
from .kmeans import KMeansClustering, kmeans
from .spectral import SpectralClustering, spectral_clustering

__all__ = [
    "ClusterResult",
    "ClusteringMethod",
    "KMeansClustering",
    "SpectralClustering",
    "align_labels",
    "apply_alignment",
    "kmeans",
    "smallest_eigenpairs",
    "spectral_clustering",
]
