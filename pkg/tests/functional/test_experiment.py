"""
Functional tests for the experiment runner and image segmentation.
"""

import json

import numpy as np
import pytest

from src.multiclass_gl.config.schema import RunConfigFile
from src.multiclass_gl.core.experiment import ExperimentRunner, load_dataset, obtain_graph
from src.multiclass_gl.core.segmentation import segment_image
from src.multiclass_gl.datasets.base import FidelitySet
from src.multiclass_gl.datasets.generators import gen_swiss_roll
from src.multiclass_gl.exceptions import ConfigError
from src.multiclass_gl.graph.base import GraphConfig
from src.multiclass_gl.graph.builder import build_graph
from src.multiclass_gl.graph.cache import save_graph
from src.multiclass_gl.solver.base import SolverConfig


class TestExperimentRunner:
    """Repeated seeded runs over one shared graph."""

    @pytest.mark.primary
    def test_runs_share_graph_and_vary_seeds(self, tmp_path):
        config = self.getConfig(tmp_path, runs=3)
        runner = ExperimentRunner(config)
        result = runner.run()
        assert [o.run_index for o in result.outcomes] == [0, 1, 2]
        assert result.report.runs == 3
        assert len({o.labels.tobytes() for o in result.outcomes}) > 1
        assert result.payload["best_run"] == result.report.best_run

    @pytest.mark.primary
    def test_confusion_rows_match_class_sizes(self, tmp_path):
        result = ExperimentRunner(self.getConfig(tmp_path, runs=1)).run()
        assert result.report.confusion.sum(axis=1).tolist() == [500, 500, 500]

    @pytest.mark.coverage
    def test_graph_cache_reused(self, tmp_path):
        cache = tmp_path / "moons.glgr"
        config = self.getConfig(tmp_path, runs=1, graph_cache=str(cache))
        dataset = load_dataset(config)
        built = obtain_graph(dataset, config)
        assert cache.exists()
        loaded = obtain_graph(dataset, config)
        np.testing.assert_array_equal(loaded.weights.data, built.weights.data)

    @pytest.mark.coverage
    def test_cache_size_mismatch(self, tmp_path):
        cache = tmp_path / "roll.glgr"
        roll = gen_swiss_roll(seed=1, per_class=20)
        save_graph(build_graph(roll.points, GraphConfig(N=5, M=5), n_jobs=1), cache)
        moons = self.getConfig(tmp_path, runs=1, graph_cache=str(cache))
        with pytest.raises(ConfigError):
            obtain_graph(load_dataset(moons), moons)

    @pytest.mark.coverage
    def test_exclude_fidelity_and_timings(self, tmp_path):
        config = self.getConfig(tmp_path, runs=1, exclude_fidelity=True, record_timings=True)
        result = ExperimentRunner(config).run()
        assert result.payload["params"]["exclude_fidelity"] is True
        assert result.payload["mean_runtime_s"] > 0
        timings = json.loads(result.artifacts["timings"].read_text())
        assert len(timings["runtimes_s"]) == 1

    @pytest.mark.coverage
    def test_spectral_baseline(self, tmp_path):
        config = self.getConfig(tmp_path, runs=1, method="spectral")
        result = ExperimentRunner(config).run()
        assert result.payload["method"] == "spectral"
        assert result.payload["params"]["baseline"]["restarts"] == 10
        assert result.report.accuracy > 1.0 / 3.0

    @pytest.mark.coverage
    @pytest.mark.parametrize(
        "method, builds_graph",
        [("multiclass_gl", True), ("spectral", True), ("kmeans", False)],
    )
    def test_graph_built_only_when_method_needs_it(self, tmp_path, method, builds_graph):
        runner = ExperimentRunner(self.getConfig(tmp_path, runs=1, method=method))
        runner.prepare()
        assert (runner.graph is not None) is builds_graph

    @pytest.mark.coverage
    def test_class_count_mismatch(self, tmp_path):
        config = self.getConfig(tmp_path, runs=1)
        config = config.model_copy(update={"solver": SolverConfig(K=4, eps=1.0)})
        with pytest.raises(ConfigError):
            load_dataset(config)

    # Helper methods
    def getConfig(self, tmp_path, runs, method="multiclass_gl", **extra):
        """Three-moons configuration with a short solver budget."""
        raw = {
            "dataset": {"generator": "three-moons", "seed": 1},
            "graph": {"N": 10, "M": 10},
            "method": method,
            "solver": {"K": 3, "mu": 30.0, "eps": 1.0, "dt": 0.01, "nmax": 25, "seed": 0},
            "fidelity": {"mode": "per_class", "count": 25, "seed": 0},
            "runs": runs,
            "n_jobs": 1,
            "output_dir": str(tmp_path / "results"),
        }
        raw.update(extra)
        return RunConfigFile.model_validate(raw)


class TestSegmentation:
    """Scribble-supervised segmentation through the core API."""

    @pytest.mark.primary
    def test_two_region_image(self, tmp_path):
        image = np.zeros((10, 12, 3), dtype=np.uint8)
        image[:, 6:] = 220
        image = image + np.random.default_rng(2).integers(0, 4, size=image.shape).astype(np.uint8)
        fidelity = FidelitySet.from_entries(
            [(y * 12 + x, int(x >= 6), 30.0) for y in (1, 3, 5, 7, 9) for x in (0, 2, 4, 7, 9, 11)],
            n_classes=2,
        )
        result = segment_image(
            image,
            fidelity,
            GraphConfig(N=8, M=8),
            SolverConfig(K=2, mu=30.0, eps=1.0, dt=0.01, nmax=500),
            output_prefix=tmp_path / "halves",
            patch=1,
        )
        assert len(result.mask_paths) == 2
        assert result.fidelity_retained() == 1.0
        expected = np.tile((np.arange(12) >= 6).astype(int), 10)
        np.testing.assert_array_equal(result.labels, expected)
