"""
Per-class binary image masks.
"""

import logging
from pathlib import Path
from typing import List, Optional

import numpy as np
from PIL import Image

from ..exceptions import ContractError

logger = logging.getLogger(__name__)


def emit_class_masks(
    labels: np.ndarray,
    width: int,
    height: int,
    path_prefix: Path,
    n_classes: Optional[int] = None,
    suffix: str = ".ppm",
) -> List[Path]:
    """Write one image per class: white where the label equals the class, black elsewhere.

    Files are named ``<prefix>_class<k><suffix>``; the suffix picks the format
    (``.ppm`` writes binary P6, ``.png`` writes PNG).
    """
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    if labels.size != width * height:
        raise ContractError(
            f"{labels.size} labels do not cover a {width}×{height} image"
        )
    k = n_classes if n_classes is not None else int(labels.max()) + 1
    grid = labels.reshape(height, width)
    prefix = Path(path_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)

    paths = []
    for c in range(k):
        mask = np.where(grid == c, 255, 0).astype(np.uint8)
        rgb = np.repeat(mask[:, :, None], 3, axis=2)
        path = prefix.parent / f"{prefix.name}_class{c}{suffix}"
        Image.fromarray(rgb).save(path)
        paths.append(path)
    logger.info("Wrote %d class masks with prefix %s", k, prefix)
    return paths
