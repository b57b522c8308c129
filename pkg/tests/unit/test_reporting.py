"""
Tests for scoring, aggregation and emitted artifacts.
"""

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from PIL import Image

from src.multiclass_gl.exceptions import ContractError
from src.multiclass_gl.model.energy import EnergyBreakdown
from src.multiclass_gl.reporting.masks import emit_class_masks
from src.multiclass_gl.reporting.metrics import (
    accuracy,
    aggregate,
    aligned_accuracy,
    confusion_matrix,
)
from src.multiclass_gl.reporting.report import write_report, write_timings
from src.multiclass_gl.reporting.svg import emit_energy_plot, emit_scatter_svg
from src.multiclass_gl.solver.base import RunTrace

SVG_NS = "{http://www.w3.org/2000/svg}"


class TestMetrics:
    """Accuracy, confusion matrices and aggregation."""

    @pytest.mark.primary
    def test_accuracy_extremes(self):
        truth = np.array([0, 1, 2, 1])
        assert accuracy(truth, truth) == 1.0
        assert accuracy((truth + 1) % 3, truth) == 0.0

    @pytest.mark.primary
    def test_accuracy_count(self):
        truth = np.zeros(1500, dtype=int)
        pred = truth.copy()
        pred[:73] = 1
        assert accuracy(pred, truth) == pytest.approx(1427 / 1500)

    @pytest.mark.coverage
    def test_accuracy_with_mask(self):
        truth = np.array([0, 1, 1, 0])
        pred = np.array([1, 1, 1, 0])
        mask = np.array([False, True, True, True])
        assert accuracy(pred, truth, mask) == 1.0

    @pytest.mark.coverage
    def test_accuracy_length_mismatch(self):
        with pytest.raises(ContractError):
            accuracy(np.zeros(3), np.zeros(4))

    @pytest.mark.primary
    def test_accuracy_is_permutation_invariant(self):
        rng = np.random.default_rng(2)
        pred, truth = rng.integers(0, 4, 50), rng.integers(0, 4, 50)
        permutation = rng.permutation(4)
        assert accuracy(permutation[pred], permutation[truth]) == accuracy(pred, truth)

    @pytest.mark.primary
    def test_confusion_rows_are_class_counts(self):
        truth = np.array([0, 0, 1, 2, 2, 2])
        pred = np.array([0, 1, 1, 2, 0, 2])
        table = confusion_matrix(pred, truth, 3)
        assert table.sum(axis=1).tolist() == [2, 1, 3]
        assert table.sum() == 6
        assert table[2, 0] == 1

    @pytest.mark.coverage
    def test_aligned_accuracy(self):
        truth = np.array([0, 0, 1, 1, 1])
        pred = np.array([1, 1, 0, 0, 1])
        assert aligned_accuracy(pred, truth, 2) == pytest.approx(0.8)

    @pytest.mark.primary
    def test_single_run_has_zero_stddev(self):
        report = aggregate([0.9], [1.5])
        assert report.stddev == 0.0
        assert report.runs == 1

    @pytest.mark.primary
    def test_two_point_aggregate(self):
        report = aggregate([0.9, 1.0], [1.0, 3.0])
        assert report.accuracy == pytest.approx(0.95)
        assert report.stddev == pytest.approx(0.0707107, abs=1e-6)
        assert report.mean_runtime_s == 2.0
        assert report.best_run == 1

    @pytest.mark.primary
    def test_aggregate_matches_statistics_oracle(self):
        rng = np.random.default_rng(4)
        accs = rng.uniform(0.8, 1.0, size=100)
        report = aggregate(accs, np.ones(100))
        mean = sum(accs) / 100
        variance = sum((a - mean) ** 2 for a in accs) / 99
        assert abs(report.accuracy - mean) < 1e-12
        assert abs(report.stddev - variance**0.5) < 1e-12

    @pytest.mark.coverage
    def test_aggregate_needs_runs(self):
        with pytest.raises(ContractError):
            aggregate([], [])

    @pytest.mark.coverage
    def test_report_dict_hides_runtime_by_default(self):
        payload = aggregate([0.5, 0.7], [1.0, 2.0]).to_dict("three-moons", "kmeans", {})
        assert payload["mean_runtime_s"] is None
        assert payload["mean_accuracy"] == pytest.approx(0.6)
        assert set(payload) >= {
            "dataset",
            "method",
            "params",
            "runs",
            "mean_accuracy",
            "stddev",
            "mean_runtime_s",
            "confusion",
        }


class TestReportFiles:
    """JSON report and timings files."""

    @pytest.mark.primary
    def test_report_is_byte_deterministic(self, tmp_path):
        payload = {"b": 1, "a": [0.1, 0.2], "c": {"z": None, "y": "x"}}
        first = write_report(payload, tmp_path / "one.json").read_bytes()
        second = write_report(dict(reversed(list(payload.items()))), tmp_path / "two.json")
        assert first == second.read_bytes()

    @pytest.mark.coverage
    def test_timings(self, tmp_path):
        path = write_timings([1.0, 3.0], tmp_path / "timings.json")
        data = json.loads(path.read_text())
        assert data["mean_runtime_s"] == 2.0
        assert data["runtimes_s"] == [1.0, 3.0]


class TestScatterSvg:
    """Class scatter plots."""

    @pytest.mark.primary
    def test_circle_and_legend_counts(self, tmp_path):
        path = emit_scatter_svg(
            np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 0.5]]), [0, 1, 2], tmp_path / "s.svg"
        )
        root = ET.parse(path).getroot()
        assert len(root.findall(f".//{SVG_NS}circle")) == 3
        assert len(self._legend_entries(root)) == 3

    @pytest.mark.primary
    def test_empty_dataset(self, tmp_path):
        path = emit_scatter_svg(np.empty((0, 2)), [], tmp_path / "empty.svg")
        root = ET.parse(path).getroot()
        assert root.tag == f"{SVG_NS}svg"
        assert root.findall(f".//{SVG_NS}circle") == []

    @pytest.mark.primary
    def test_byte_deterministic(self, tmp_path):
        points = np.random.default_rng(1).standard_normal((30, 5))
        labels = np.arange(30) % 3
        first = emit_scatter_svg(points, labels, tmp_path / "a.svg").read_bytes()
        second = emit_scatter_svg(points, labels, tmp_path / "b.svg").read_bytes()
        assert first == second

    @pytest.mark.coverage
    def test_distinct_class_colors(self, tmp_path):
        path = emit_scatter_svg(np.eye(4)[:, :2], [0, 1, 2, 3], tmp_path / "c.svg")
        fills = {c.get("fill") for c in ET.parse(path).getroot().iter(f"{SVG_NS}circle")}
        assert len(fills) == 4

    @pytest.mark.coverage
    def test_mismatched_points(self, tmp_path):
        with pytest.raises(ContractError):
            emit_scatter_svg(np.zeros((2, 2)), [0, 1, 1], tmp_path / "bad.svg")

    # Helper methods
    def _legend_entries(self, root):
        return [g for g in root.iter(f"{SVG_NS}g") if g.get("class") == "legend-entry"]


class TestEnergyPlot:
    """Energy curves and the CSV trace."""

    @pytest.mark.primary
    def test_single_point_trace(self, tmp_path):
        trace = self._trace([(3.0, 1.0, 0.5)])
        path = emit_energy_plot(trace, tmp_path / "energy.svg", tmp_path / "trace.csv")
        root = ET.parse(path).getroot()
        polylines = root.findall(f".//{SVG_NS}polyline")
        assert len(polylines) == 4
        assert all(len(p.get("points").split()) == 1 for p in polylines)
        assert len((tmp_path / "trace.csv").read_text().splitlines()) == 2

    @pytest.mark.primary
    def test_constant_trace_is_flat(self, tmp_path):
        trace = self._trace([(1.0, 1.0, 1.0)] * 5)
        root = ET.parse(emit_energy_plot(trace, tmp_path / "flat.svg")).getroot()
        for polyline in root.iter(f"{SVG_NS}polyline"):
            ys = {pair.split(",")[1] for pair in polyline.get("points").split()}
            assert len(ys) == 1

    @pytest.mark.coverage
    def test_series_classes(self, tmp_path):
        trace = self._trace([(3.0, 1.0, 0.5), (2.0, 0.8, 0.4)])
        root = ET.parse(emit_energy_plot(trace, tmp_path / "e.svg")).getroot()
        classes = {p.get("class") for p in root.iter(f"{SVG_NS}polyline")}
        assert classes == {
            "series-total",
            "series-smoothing",
            "series-potential",
            "series-fidelity",
        }

    @pytest.mark.coverage
    def test_empty_trace_rejected(self, tmp_path):
        with pytest.raises(ContractError):
            emit_energy_plot(RunTrace(), tmp_path / "none.svg")

    # Helper methods
    def _trace(self, rows):
        trace = RunTrace()
        for smoothing, potential, fidelity in rows:
            trace.record(1.0, EnergyBreakdown(smoothing, potential, fidelity), 0)
        return trace


class TestClassMasks:
    """Per-class binary images."""

    @pytest.mark.primary
    def test_single_class_image(self, tmp_path):
        paths = emit_class_masks(np.zeros(12, dtype=int), 4, 3, tmp_path / "img", n_classes=3)
        assert [p.name for p in paths] == ["img_class0.ppm", "img_class1.ppm", "img_class2.ppm"]
        masks = [np.asarray(Image.open(p)) for p in paths]
        assert np.all(masks[0] == 255)
        assert np.all(masks[1] == 0)
        assert np.all(masks[2] == 0)

    @pytest.mark.primary
    def test_checkerboard_masks_are_complementary(self, tmp_path):
        ys, xs = np.mgrid[0:4, 0:6]
        labels = ((xs + ys) % 2).reshape(-1)
        paths = emit_class_masks(labels, 6, 4, tmp_path / "board", suffix=".png")
        first, second = (np.asarray(Image.open(p))[:, :, 0] for p in paths)
        assert np.all((first == 255) ^ (second == 255))
        assert first[0, 0] == 255

    @pytest.mark.coverage
    def test_size_mismatch(self, tmp_path):
        with pytest.raises(ContractError):
            emit_class_masks(np.zeros(5, dtype=int), 2, 2, tmp_path / "bad")
