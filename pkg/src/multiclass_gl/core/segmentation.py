"""
Scribble-supervised segmentation of a single image.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from ..datasets.base import FidelitySet
from ..datasets.images import ImageSpec, image_patch_features, load_image, load_scribbles
from ..graph.base import GraphConfig
from ..graph.builder import build_graph
from ..reporting.masks import emit_class_masks
from ..solver.base import SolverConfig
from ..solver.gradient_flow import MulticlassGLSolver, SolverResult

logger = logging.getLogger(__name__)


@dataclass
class SegmentationResult:
    labels: np.ndarray
    width: int
    height: int
    fidelity: FidelitySet
    solver: SolverResult
    mask_paths: List[Path]

    def fidelity_retained(self) -> float:
        """Fraction of scribbled pixels whose final label is their scribbled class."""
        return float(np.mean(self.labels[self.fidelity.vertices] == self.fidelity.classes))


def segment_image(
    image: np.ndarray,
    fidelity: FidelitySet,
    graph_config: GraphConfig,
    solver_config: SolverConfig,
    output_prefix: Optional[Path] = None,
    patch: int = 5,
    mask_suffix: str = ".ppm",
) -> SegmentationResult:
    """Patch features → similarity graph → multiclass GL → per-class masks."""
    spec = ImageSpec.for_image(image, patch=patch)
    features = image_patch_features(image, spec, n_classes=solver_config.n_classes)
    logger.info(
        "Segmenting %d×%d image into %d classes (d=%d)",
        spec.width,
        spec.height,
        solver_config.n_classes,
        features.dim,
    )
    graph = build_graph(features.points, graph_config)
    result = MulticlassGLSolver(graph, solver_config).run(fidelity)

    paths: List[Path] = []
    if output_prefix is not None:
        paths = emit_class_masks(
            result.labels,
            spec.width,
            spec.height,
            output_prefix,
            n_classes=solver_config.n_classes,
            suffix=mask_suffix,
        )
    return SegmentationResult(result.labels, spec.width, spec.height, fidelity, result, paths)


def segment_image_file(
    image_path: Path,
    scribbles_path: Path,
    graph_config: GraphConfig,
    solver_config: SolverConfig,
    output_prefix: Optional[Path] = None,
    patch: int = 5,
    mask_suffix: str = ".ppm",
) -> SegmentationResult:
    image = load_image(image_path)
    fidelity = load_scribbles(
        scribbles_path,
        width=image.shape[1],
        height=image.shape[0],
        mu=solver_config.mu,
        n_classes=solver_config.n_classes,
    )
    return segment_image(
        image, fidelity, graph_config, solver_config, output_prefix, patch, mask_suffix
    )
