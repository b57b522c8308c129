"""
Dataset layer for multiclass GL segmentation.

This layer handles:
- Synthetic generators (three moons, swiss roll)
- Image patch features, images and scribble files
- CSV and IDX benchmark ingestion
- Seeded fidelity-set sampling
"""

from .base import DataSet, FidelitySet
from .fidelity import FidelitySpec, sample_fidelity
from .generators import GENERATORS, gen_swiss_roll, gen_three_moons, generate
from .images import (
    ImageSpec,
    image_patch_features,
    load_image,
    load_scribbles,
    parse_scribbles,
)
from .loaders import (
    load_csv_dataset,
    load_idx_dataset,
    load_idx_images,
    load_idx_labels,
    load_mnist,
    save_csv_dataset,
    stratified_subsample,
)

__all__ = [
    "DataSet",
    "FidelitySet",
    "FidelitySpec",
    "GENERATORS",
    "ImageSpec",
    "gen_swiss_roll",
    "gen_three_moons",
    "generate",
    "image_patch_features",
    "load_csv_dataset",
    "load_idx_dataset",
    "load_idx_images",
    "load_idx_labels",
    "load_image",
    "load_mnist",
    "load_scribbles",
    "parse_scribbles",
    "sample_fidelity",
    "save_csv_dataset",
    "stratified_subsample",
]
