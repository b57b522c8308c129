"""
Benchmark ingestion: CSV feature tables and IDX image/label files.
"""

import csv
import gzip
import logging
import struct
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from ..exceptions import ConfigError, ContractError, DataFormatError
from .base import DataSet

logger = logging.getLogger(__name__)

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801


def _read_bytes(path: Path) -> bytes:
    path = Path(path)
    if path.suffix == ".gz":
        with gzip.open(path, "rb") as f:
            return f.read()
    return path.read_bytes()


def _read_idx_header(blob: bytes, magic: int, n_dims: int) -> List[int]:
    if len(blob) < 4:
        raise DataFormatError("Truncated IDX magic number", offset=0)
    (found,) = struct.unpack_from(">I", blob, 0)
    if found != magic:
        raise DataFormatError(f"Bad IDX magic 0x{found:08x}, expected 0x{magic:08x}", offset=0)
    if len(blob) < 4 + 4 * n_dims:
        raise DataFormatError("Truncated IDX dimension header", offset=len(blob))
    return list(struct.unpack_from(f">{n_dims}I", blob, 4))


def _read_idx_payload(blob: bytes, offset: int, count: int) -> np.ndarray:
    if len(blob) < offset + count:
        raise DataFormatError(
            f"Truncated IDX payload: expected {count} bytes, found {len(blob) - offset}",
            offset=len(blob),
        )
    return np.frombuffer(blob, dtype=">u1", count=count, offset=offset)


def load_idx_images(path: Path) -> np.ndarray:
    """Unsigned-byte IDX images as an n×(rows·cols) matrix scaled to [0, 1]."""
    blob = _read_bytes(path)
    n, rows, cols = _read_idx_header(blob, IDX_IMAGES_MAGIC, 3)
    pixels = _read_idx_payload(blob, 16, n * rows * cols)
    return pixels.reshape(n, rows * cols).astype(np.float64) / 255.0


def load_idx_labels(path: Path) -> np.ndarray:
    """Unsigned-byte IDX labels as an int64 vector."""
    blob = _read_bytes(path)
    (n,) = _read_idx_header(blob, IDX_LABELS_MAGIC, 1)
    return _read_idx_payload(blob, 8, n).astype(np.int64)


def load_idx_dataset(
    image_paths: List[Path], label_paths: List[Path], name: str = "idx"
) -> DataSet:
    """Concatenate matching IDX image and label files into one DataSet."""
    points = np.vstack([load_idx_images(p) for p in image_paths])
    labels = np.concatenate([load_idx_labels(p) for p in label_paths])
    if labels.size != points.shape[0]:
        raise ContractError(f"{points.shape[0]} images but {labels.size} labels")
    return DataSet(points, labels, n_classes=int(labels.max()) + 1, name=name)


def load_mnist(directory: Path) -> DataSet:
    """Official MNIST train and test files (plain or .gz), 70,000 points."""
    directory = Path(directory)
    stems = {
        "images": ["train-images-idx3-ubyte", "t10k-images-idx3-ubyte"],
        "labels": ["train-labels-idx1-ubyte", "t10k-labels-idx1-ubyte"],
    }
    found = {key: [_find_variant(directory, s) for s in names] for key, names in stems.items()}
    return load_idx_dataset(found["images"], found["labels"], name="mnist")


def _find_variant(directory: Path, stem: str) -> Path:
    for candidate in (directory / stem, directory / f"{stem}.gz"):
        if candidate.exists():
            return candidate
    raise ConfigError(f"MNIST file {stem}[.gz] not found in {directory}")


def load_csv_dataset(
    path: Path, label_column: Optional[Union[str, int]] = None, name: Optional[str] = None
) -> DataSet:
    """Numeric CSV, one row per point, with an optional integer label column.

    A header row is detected when its first cell is not numeric. Without an
    explicit label_column a header column named ``label`` is used. Labels
    that are not already 0..K-1 are remapped in ascending order.
    """
    path = Path(path)
    header: Optional[List[str]] = None
    rows: List[List[float]] = []
    width: Optional[int] = None

    with open(path, newline="", encoding="utf-8") as f:
        for line_no, raw in enumerate(csv.reader(f), start=1):
            if not raw or all(not cell.strip() for cell in raw):
                continue
            cells = [cell.strip() for cell in raw]
            if header is None and not rows and not _is_number(cells[0]):
                header = cells
                width = len(cells)
                continue
            if width is None:
                width = len(cells)
            if len(cells) != width:
                raise DataFormatError(
                    f"Ragged row: {len(cells)} cells, expected {width}", line=line_no
                )
            try:
                rows.append([float(cell) for cell in cells])
            except ValueError:
                raise DataFormatError(f"Non-numeric cell in row {cells}", line=line_no)

    if not rows:
        raise DataFormatError(f"CSV file {path} has no data rows", line=1)

    table = np.array(rows, dtype=np.float64)
    column = _resolve_label_column(label_column, header, table.shape[1])
    if column is None:
        return DataSet(table, None, name=name or path.stem)

    raw_labels = table[:, column]
    if not np.all(raw_labels == np.round(raw_labels)):
        raise DataFormatError(f"Label column {column} holds non-integer values")
    points = np.delete(table, column, axis=1)
    classes, labels = np.unique(raw_labels.astype(np.int64), return_inverse=True)
    if not np.array_equal(classes, np.arange(classes.size)):
        logger.warning("Remapped labels %s to 0..%d", classes.tolist(), classes.size - 1)
    return DataSet(points, labels, n_classes=max(2, classes.size), name=name or path.stem)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _resolve_label_column(
    label_column: Optional[Union[str, int]], header: Optional[List[str]], width: int
) -> Optional[int]:
    if label_column is None:
        if header is not None and "label" in header:
            return header.index("label")
        return None
    if isinstance(label_column, int) or str(label_column).lstrip("-").isdigit():
        index = int(label_column)
        if index < 0:
            index += width
        if not 0 <= index < width:
            raise ConfigError(f"Label column {label_column} outside {width} columns")
        return index
    if header is None or label_column not in header:
        raise ConfigError(f"Label column {label_column!r} not in CSV header")
    return header.index(label_column)


def save_csv_dataset(dataset: DataSet, path: Path) -> None:
    """Write features (x0..x{d-1}) and, when present, a trailing label column."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        header = [f"x{j}" for j in range(dataset.dim)]
        if dataset.labels is not None:
            header.append("label")
        writer.writerow(header)
        for i in range(dataset.n):
            row = [repr(float(v)) for v in dataset.points[i]]
            if dataset.labels is not None:
                row.append(str(int(dataset.labels[i])))
            writer.writerow(row)
    logger.info("Wrote %d rows to %s", dataset.n, path)


def stratified_subsample(dataset: DataSet, size: int, seed: int) -> DataSet:
    """Seeded class-proportional subsample of a labeled dataset."""
    if dataset.labels is None:
        raise ContractError("Stratified subsampling needs labels")
    if not dataset.n_classes <= size <= dataset.n:
        raise ConfigError(f"Subsample size {size} outside [{dataset.n_classes}, {dataset.n}]")
    rng = np.random.default_rng(seed)
    counts = dataset.class_counts()
    quota = np.floor(counts * size / dataset.n).astype(np.int64)
    quota = np.maximum(quota, 1)
    # hand leftover slots to the largest remainders, lowest class first on ties
    remainder = counts * size / dataset.n - np.floor(counts * size / dataset.n)
    for c in np.argsort(-remainder, kind="stable")[: max(0, size - int(quota.sum()))]:
        quota[c] += 1
    chosen = np.concatenate(
        [
            rng.choice(np.flatnonzero(dataset.labels == c), size=int(quota[c]), replace=False)
            for c in range(dataset.n_classes)
        ]
    )
    chosen = np.sort(chosen)
    return DataSet(
        dataset.points[chosen],
        dataset.labels[chosen],
        n_classes=dataset.n_classes,
        name=f"{dataset.name}-sub{size}",
    )
