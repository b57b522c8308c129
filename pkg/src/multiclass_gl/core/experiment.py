"""
Experiment runner that ties datasets, graph, solver and reporting together.
"""

import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from joblib import Parallel, delayed

from ..baselines.alignment import align_labels, apply_alignment
from ..baselines.base import ClusteringMethod
from ..baselines.kmeans import KMeansClustering
from ..baselines.spectral import SpectralClustering
from ..config.schema import RunConfigFile
from ..datasets.base import DataSet, FidelitySet
from ..datasets.fidelity import sample_fidelity
from ..datasets.generators import generate
from ..datasets.loaders import load_csv_dataset, load_mnist, stratified_subsample
from ..exceptions import ConfigError
from ..graph.base import SimilarityGraph
from ..graph.builder import build_graph
from ..graph.cache import load_graph, save_graph
from ..reporting.metrics import EvalReport, accuracy, aggregate, confusion_matrix
from ..reporting.report import write_report, write_timings
from ..reporting.svg import emit_energy_plot, emit_scatter_svg
from ..solver.base import RunTrace
from ..solver.gradient_flow import MulticlassGLSolver
from ..utils.parallel import resolve_n_jobs

logger = logging.getLogger(__name__)


@dataclass
class RunOutcome:
    run_index: int
    accuracy: float
    runtime_s: float
    labels: np.ndarray
    trace: Optional[RunTrace] = None


@dataclass
class ExperimentResult:
    report: EvalReport
    payload: Dict[str, Any]
    outcomes: List[RunOutcome]
    artifacts: Dict[str, Path]


def load_dataset(config: RunConfigFile) -> DataSet:
    """Materialize the dataset named by the config."""
    section = config.dataset
    if section.generator is not None:
        dataset = generate(section.generator, section.seed)
    elif section.format == "mnist":
        dataset = load_mnist(Path(section.path))
    else:
        path = Path(section.path)
        if not path.exists():
            raise ConfigError(f"Dataset file not found: {path}")
        dataset = load_csv_dataset(path, section.label_column)

    if section.subsample is not None and section.subsample < dataset.n:
        dataset = stratified_subsample(dataset, section.subsample, section.subsample_seed)
    if dataset.labels is None:
        raise ConfigError(f"Dataset {section.describe()} has no labels to score against")
    if dataset.n_classes != config.n_classes:
        raise ConfigError(
            f"Dataset has {dataset.n_classes} classes, config says K={config.n_classes}"
        )
    logger.info("Loaded dataset %s: n=%d, d=%d, K=%d", dataset.name, dataset.n, dataset.dim, dataset.n_classes)
    return dataset


def obtain_graph(dataset: DataSet, config: RunConfigFile) -> SimilarityGraph:
    """Load the cached graph when present, otherwise build (and cache) it."""
    cache = Path(config.graph_cache) if config.graph_cache else None
    if cache is not None and cache.exists():
        graph = load_graph(cache)
        if graph.n != dataset.n:
            raise ConfigError(f"Graph cache {cache} has n={graph.n}, dataset has n={dataset.n}")
        logger.info("Loaded graph cache %s", cache)
        return graph
    graph = build_graph(dataset.points, config.graph, n_jobs=config.n_jobs)
    if cache is not None:
        save_graph(graph, cache)
    return graph


def _baseline(config: RunConfigFile) -> ClusteringMethod:
    options = config.baseline.model_dump()
    if config.method == "kmeans":
        return KMeansClustering(options)
    if options["n_eigenvectors"] is None:
        options["n_eigenvectors"] = config.n_classes
    return SpectralClustering(options)


def execute_run(
    config: RunConfigFile, dataset: DataSet, graph: Optional[SimilarityGraph], run_index: int
) -> RunOutcome:
    """One seeded repetition; run i uses seed + i for both fidelity and state."""
    seed = config.solver.seed + run_index
    started = time.perf_counter()

    if config.method == "multiclass_gl":
        spec = config.fidelity.model_copy(update={"seed": config.fidelity.seed + run_index})
        fidelity = sample_fidelity(dataset.labels, spec, config.solver.mu, dataset.n_classes)
        solver = MulticlassGLSolver(graph, config.solver.model_copy(update={"seed": seed}))
        result = solver.run(fidelity)
        labels, trace = result.labels, result.trace
        mask = _scoring_mask(dataset.n, fidelity) if config.exclude_fidelity else None
        score = accuracy(labels, dataset.labels, mask)
    else:
        clusters = _baseline(config).fit_predict(dataset, graph, config.n_classes, seed)
        perm = align_labels(clusters.assignments, dataset.labels, config.n_classes)
        labels, trace = apply_alignment(clusters.assignments, perm), None
        score = accuracy(labels, dataset.labels)

    runtime = time.perf_counter() - started
    logger.info("Run %d (%s): accuracy %.4f in %.2fs", run_index, config.method, score, runtime)
    return RunOutcome(run_index, score, runtime, labels, trace)


def _scoring_mask(n: int, fidelity: FidelitySet) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    mask[fidelity.vertices] = False
    return mask


class ExperimentRunner:
    """Runs every repetition of one configuration and writes its artifacts."""

    def __init__(self, config: RunConfigFile):
        self.config = config
        self.dataset: Optional[DataSet] = None
        self.graph: Optional[SimilarityGraph] = None

    def prepare(self) -> None:
        self.dataset = load_dataset(self.config)
        config = self.config
        needs_graph = config.method == "multiclass_gl" or _baseline(config).needs_graph
        self.graph = obtain_graph(self.dataset, config) if needs_graph else None

    def run(self) -> ExperimentResult:
        if self.dataset is None:
            self.prepare()
        config = self.config
        n_jobs = min(resolve_n_jobs(config.n_jobs), config.runs)

        if n_jobs == 1:
            outcomes = [
                execute_run(config, self.dataset, self.graph, i) for i in range(config.runs)
            ]
        else:
            outcomes = Parallel(n_jobs=n_jobs)(
                delayed(execute_run)(config, self.dataset, self.graph, i)
                for i in range(config.runs)
            )
        outcomes = sorted(outcomes, key=lambda o: o.run_index)

        best = max(outcomes, key=lambda o: (o.accuracy, -o.run_index))
        report = aggregate(
            [o.accuracy for o in outcomes],
            [o.runtime_s for o in outcomes],
            confusion_matrix(best.labels, self.dataset.labels, config.n_classes),
        )
        payload = report.to_dict(
            dataset=config.dataset.describe(),
            method=config.method,
            params=self._params(),
            include_runtime=config.record_timings,
        )
        artifacts = self._write_artifacts(payload, outcomes, best)
        logger.info(
            "%s: mean accuracy %.4f (stddev %.4f) over %d runs",
            config.name,
            report.accuracy,
            report.stddev,
            report.runs,
        )
        return ExperimentResult(report, payload, outcomes, artifacts)

    def _params(self) -> Dict[str, Any]:
        config = self.config
        params: Dict[str, Any] = {
            "graph": config.graph.model_dump(by_alias=True),
            "solver": config.solver.model_dump(by_alias=True, exclude_none=True),
        }
        if config.fidelity is not None:
            params["fidelity"] = config.fidelity.model_dump(exclude_none=True)
        if config.method != "multiclass_gl":
            params["baseline"] = config.baseline.model_dump(exclude_none=True)
        if config.exclude_fidelity:
            params["exclude_fidelity"] = True
        return params

    def _write_artifacts(
        self, payload: Dict[str, Any], outcomes: List[RunOutcome], best: RunOutcome
    ) -> Dict[str, Path]:
        out = Path(self.config.output_dir)
        artifacts = {
            "report": write_report(payload, out / "report.json"),
            "timings": write_timings([o.runtime_s for o in outcomes], out / "timings.json"),
        }
        if not self.config.artifacts:
            return artifacts
        artifacts["scatter"] = emit_scatter_svg(
            self.dataset.points[:, :2] if self.dataset.dim >= 2 else np.column_stack(
                [self.dataset.points[:, 0], np.zeros(self.dataset.n)]
            ),
            best.labels,
            out / "scatter.svg",
            n_classes=self.config.n_classes,
            title=f"{self.config.name} run {best.run_index}: {best.accuracy:.4f}",
        )
        if best.trace is not None and len(best.trace):
            artifacts["energy"] = emit_energy_plot(
                best.trace, out / "energy.svg", csv_path=out / "trace.csv"
            )
            artifacts["trace"] = out / "trace.csv"
        return artifacts
