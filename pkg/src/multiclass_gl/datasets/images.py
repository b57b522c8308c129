"""
Image patch features, image reading and scribble files.
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from PIL import Image, UnidentifiedImageError

from ..exceptions import ConfigError, DataFormatError
from .base import DataSet, FidelitySet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ImageSpec:
    width: int
    height: int
    channels: int = 3
    patch: int = 5

    def __post_init__(self):
        if self.channels not in (1, 3):
            raise ConfigError(f"Images must have 1 or 3 channels, got {self.channels}")
        if self.patch < 1 or self.patch % 2 == 0:
            raise ConfigError(f"Patch size must be a positive odd integer, got {self.patch}")
        if self.patch > min(self.width, self.height):
            raise ConfigError(
                f"Patch size {self.patch} exceeds image size {self.width}×{self.height}"
            )

    @classmethod
    def for_image(cls, image: np.ndarray, patch: int = 5) -> "ImageSpec":
        array = np.asarray(image)
        channels = 1 if array.ndim == 2 else array.shape[2]
        return cls(width=array.shape[1], height=array.shape[0], channels=channels, patch=patch)


def image_patch_features(
    image: np.ndarray, spec: ImageSpec, n_classes: int = 2
) -> DataSet:
    """One feature vector per pixel: the patch around it, channel by channel.

    Each channel contributes its patch in row-major order and channels are
    appended (R, G, B). Borders replicate the edge pixels and intensities are
    scaled to [0, 1]. Pixels are numbered row-major (index = y·width + x).
    """
    pixels = _normalize_intensities(image)
    if pixels.ndim == 2:
        pixels = pixels[:, :, None]
    height, width, channels = pixels.shape
    if (width, height, channels) != (spec.width, spec.height, spec.channels):
        raise ConfigError(
            f"Image is {width}×{height}×{channels}, expected "
            f"{spec.width}×{spec.height}×{spec.channels}"
        )

    half = spec.patch // 2
    padded = np.pad(pixels, ((half, half), (half, half), (0, 0)), mode="edge")
    # windows: (height, width, channels, patch, patch)
    windows = sliding_window_view(padded, (spec.patch, spec.patch), axis=(0, 1))
    features = windows.reshape(height * width, channels * spec.patch * spec.patch)
    return DataSet(np.ascontiguousarray(features), None, n_classes=n_classes, name="image")


def _normalize_intensities(image: np.ndarray) -> np.ndarray:
    array = np.asarray(image)
    if array.ndim not in (2, 3):
        raise DataFormatError(f"Expected an H×W or H×W×C image, got shape {array.shape}")
    if np.issubdtype(array.dtype, np.integer):
        return array.astype(np.float64) / float(np.iinfo(array.dtype).max)
    array = array.astype(np.float64)
    if array.size and (array.min() < 0.0 or array.max() > 1.0):
        raise DataFormatError("Floating-point images must already lie in [0, 1]")
    return array


def load_image(path: Path) -> np.ndarray:
    """Read an image (PNG, PPM, ...) as an H×W×C uint8 array with C in {1, 3}."""
    try:
        with Image.open(path) as img:
            mode = "L" if img.mode in ("1", "L", "I;16", "I") else "RGB"
            array = np.asarray(img.convert(mode))
    except (UnidentifiedImageError, OSError) as e:
        raise DataFormatError(f"Cannot read image {path}: {e}")
    if array.ndim == 2:
        array = array[:, :, None]
    return array


def parse_scribbles(path: Path) -> List[Tuple[int, int, int, int]]:
    """Rows of an ``x,y,class`` scribble CSV as (line, x, y, class); header optional."""
    parsed: List[Tuple[int, int, int, int]] = []
    with open(path, newline="", encoding="utf-8") as f:
        for line_no, row in enumerate(csv.reader(f), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if line_no == 1 and not row[0].strip().lstrip("-").isdigit():
                continue
            if len(row) != 3:
                raise DataFormatError("Scribble rows need exactly x,y,class", line=line_no)
            try:
                x, y, cls = (int(cell) for cell in row)
            except ValueError:
                raise DataFormatError(f"Non-integer scribble entry {row}", line=line_no)
            if cls < 0:
                raise DataFormatError(f"Negative class {cls}", line=line_no)
            parsed.append((line_no, x, y, cls))
    if not parsed:
        raise ConfigError(f"Scribble file {path} names no pixels")
    return parsed


def load_scribbles(
    path: Path, width: int, height: int, mu: float, n_classes: Optional[int] = None
) -> FidelitySet:
    """Turn a scribble CSV into a fidelity set on the pixel grid (index = y·width + x).

    Every class in [0, K) must be scribbled at least once. K defaults to the
    largest class named plus one. Repeated pixels keep their first class.
    """
    entries: List[Tuple[int, int]] = []
    seen = set()
    for line_no, x, y, cls in parse_scribbles(path):
        if not (0 <= x < width and 0 <= y < height):
            raise DataFormatError(f"Scribble ({x}, {y}) outside the image", line=line_no)
        vertex = y * width + x
        if vertex in seen:
            continue
        seen.add(vertex)
        entries.append((vertex, cls))

    classes = np.array([c for _, c in entries])
    k = int(n_classes if n_classes is not None else classes.max() + 1)
    if classes.max() >= k:
        raise ConfigError(f"Scribble class {int(classes.max())} outside [0, {k})")
    missing = np.setdiff1d(np.arange(k), classes)
    if missing.size:
        raise ConfigError(f"Scribbles do not cover classes {missing.tolist()}")

    order = np.argsort([v for v, _ in entries], kind="stable")
    vertices = np.array([entries[i][0] for i in order])
    logger.info("Loaded %d scribbled pixels over %d classes", vertices.size, k)
    return FidelitySet(vertices, classes[order], mu, n_classes=k)
