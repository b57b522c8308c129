"""
Deterministic SVG charts: class scatter plots and energy curves.

Coordinates are written with fixed precision so identical inputs give
identical bytes.
"""

import logging
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ContractError
from ..solver.base import RunTrace

logger = logging.getLogger(__name__)

WIDTH, HEIGHT = 640, 480
MARGIN = 40
LEGEND_WIDTH = 120

PALETTE = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
]

# total in red, smoothing green, potential blue, fidelity purple
ENERGY_SERIES = [
    ("total", "#d62728"),
    ("smoothing", "#2ca02c"),
    ("potential", "#1f77b4"),
    ("fidelity", "#9467bd"),
]


def class_color(k: int) -> str:
    return PALETTE[k % len(PALETTE)]


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _svg_root() -> ET.Element:
    return ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(WIDTH),
            "height": str(HEIGHT),
            "viewBox": f"0 0 {WIDTH} {HEIGHT}",
        },
    )


def _plot_area() -> Tuple[float, float, float, float]:
    """(left, top, right, bottom) of the plotting rectangle."""
    return MARGIN, MARGIN, WIDTH - MARGIN - LEGEND_WIDTH, HEIGHT - MARGIN


def _scale(values: np.ndarray, lo: float, hi: float) -> np.ndarray:
    vmin, vmax = (float(values.min()), float(values.max())) if values.size else (0.0, 1.0)
    if vmax == vmin:
        return np.full(values.shape, (lo + hi) / 2.0)
    return lo + (values - vmin) / (vmax - vmin) * (hi - lo)


def _legend(root: ET.Element, entries: List[Tuple[str, str]]) -> None:
    group = ET.SubElement(root, "g", {"class": "legend"})
    x = WIDTH - LEGEND_WIDTH + 10
    for row, (text, color) in enumerate(entries):
        y = MARGIN + 20 * row
        entry = ET.SubElement(group, "g", {"class": "legend-entry"})
        ET.SubElement(
            entry, "rect", {"x": str(x), "y": str(y), "width": "12", "height": "12", "fill": color}
        )
        label = ET.SubElement(
            entry, "text", {"x": str(x + 18), "y": str(y + 11), "font-size": "12"}
        )
        label.text = text


def _write(root: ET.Element, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(ET.tostring(root, encoding="unicode"))
        f.write("\n")
    logger.info("Wrote %s", path)
    return path


def emit_scatter_svg(
    points: np.ndarray,
    labels: Sequence[int],
    path: Path,
    n_classes: Optional[int] = None,
    title: str = "",
) -> Path:
    """One circle per point, coloured by class, from the first two coordinates."""
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    points = np.asarray(points, dtype=np.float64)
    if labels.size == 0:
        points = np.empty((0, 2))
    elif points.ndim != 2 or points.shape[0] != labels.size or points.shape[1] < 2:
        raise ContractError(
            f"Scatter needs one 2-D (or wider) point per label, got {points.shape}"
        )
    k = n_classes if n_classes is not None else (int(labels.max()) + 1 if labels.size else 0)

    left, top, right, bottom = _plot_area()
    root = _svg_root()
    if title:
        heading = ET.SubElement(root, "text", {"x": str(MARGIN), "y": "24", "font-size": "14"})
        heading.text = title
    ET.SubElement(
        root,
        "rect",
        {
            "x": str(left),
            "y": str(top),
            "width": str(right - left),
            "height": str(bottom - top),
            "fill": "none",
            "stroke": "#999999",
        },
    )

    group = ET.SubElement(root, "g", {"class": "points"})
    if points.shape[0]:
        xs = _scale(points[:, 0], left + 5, right - 5)
        ys = _scale(points[:, 1], bottom - 5, top + 5)
        for x, y, label in zip(xs, ys, labels):
            ET.SubElement(
                group,
                "circle",
                {"cx": _fmt(x), "cy": _fmt(y), "r": "2", "fill": class_color(int(label))},
            )

    _legend(root, [(f"class {c}", class_color(c)) for c in range(k)])
    return _write(root, path)


def emit_energy_plot(trace: RunTrace, path: Path, csv_path: Optional[Path] = None) -> Path:
    """Line chart of the four energy series against iteration, plus the CSV trace."""
    if len(trace) == 0:
        raise ContractError("Cannot plot an empty trace")
    left, top, right, bottom = _plot_area()
    root = _svg_root()
    ET.SubElement(
        root,
        "rect",
        {
            "x": str(left),
            "y": str(top),
            "width": str(right - left),
            "height": str(bottom - top),
            "fill": "none",
            "stroke": "#999999",
        },
    )

    iterations = np.arange(1, len(trace) + 1, dtype=np.float64)
    all_values = np.concatenate([np.asarray(trace.series(name)) for name, _ in ENERGY_SERIES])
    vmin, vmax = float(all_values.min()), float(all_values.max())
    if len(trace) == 1:
        xs = np.array([(left + right) / 2.0])
    else:
        xs = _scale(iterations, left, right)

    for name, color in ENERGY_SERIES:
        values = np.asarray(trace.series(name))
        if vmax == vmin:
            ys = np.full(values.shape, (top + bottom) / 2.0)
        else:
            ys = bottom - (values - vmin) / (vmax - vmin) * (bottom - top)
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
        ET.SubElement(
            root,
            "polyline",
            {
                "class": f"series-{name}",
                "points": coords,
                "fill": "none",
                "stroke": color,
                "stroke-width": "1.5",
            },
        )

    for text, x, y in (
        ("iteration", (left + right) / 2.0, HEIGHT - 8),
        (f"max {vmax:.4g}", 4.0, top + 4),
        (f"min {vmin:.4g}", 4.0, bottom),
    ):
        label = ET.SubElement(root, "text", {"x": _fmt(x), "y": _fmt(y), "font-size": "11"})
        label.text = text

    _legend(root, [(name, color) for name, color in ENERGY_SERIES])
    if csv_path is not None:
        trace.to_csv(csv_path)
    return _write(root, path)
