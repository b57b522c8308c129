"""
Multiclass GL segmentation - command-line entry point.

Exit codes: 0 success, 2 configuration or input error, 3 numerical error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .config import ConfigManager
from .core.experiment import ExperimentRunner
from .core.segmentation import segment_image_file
from .datasets.generators import GENERATORS, generate
from .datasets.images import parse_scribbles
from .datasets.loaders import load_csv_dataset, save_csv_dataset
from .exceptions import GLError, NumericalError
from .graph.base import GraphConfig
from .graph.builder import build_graph
from .graph.cache import save_graph
from .solver.base import SolverConfig
from .utils.logging import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mu", type=float, help="fidelity weight")
    parser.add_argument("--eps", type=float, help="fixed interface width (drops adaptive keys)")
    parser.add_argument("--dt", type=float, help="time step")
    parser.add_argument("--nmax", type=int, help="iterations per epsilon value")
    parser.add_argument("--seed", type=int, help="base seed")
    parser.add_argument("--runs", type=int, help="number of seeded runs")
    parser.add_argument("--out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiclass-gl",
        description="Multiclass Ginzburg-Landau segmentation on similarity graphs",
    )
    parser.add_argument("--log-level", default=None, help="overrides GLM_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic dataset as CSV")
    gen.add_argument("name", choices=sorted(GENERATORS))
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", type=Path, default=None, help="CSV path (default <name>.csv)")

    graph = sub.add_parser("graph", help="build a similarity graph and write its cache")
    source = graph.add_mutually_exclusive_group(required=True)
    source.add_argument("--generator", choices=sorted(GENERATORS))
    source.add_argument("--csv", type=Path)
    graph.add_argument("--seed", type=int, default=0)
    graph.add_argument("--label-column", default=None)
    graph.add_argument("--N", type=int, default=10, dest="n_neighbors")
    graph.add_argument("--M", type=int, default=10, dest="scale_neighbor")
    graph.add_argument("--out", type=Path, required=True)

    run = sub.add_parser("run", help="run an experiment configuration")
    run.add_argument("config", type=Path)
    _add_overrides(run)

    baseline = sub.add_parser("baseline", help="run a configuration with a baseline method")
    baseline.add_argument("config", type=Path)
    baseline.add_argument("--method", choices=["kmeans", "spectral"], required=True)
    baseline.add_argument("--eigenvectors", type=int, default=None)
    _add_overrides(baseline)

    seg = sub.add_parser("segment-image", help="segment an image from scribbles")
    seg.add_argument("image", type=Path)
    seg.add_argument("scribbles", type=Path, help="CSV of x,y,class")
    seg.add_argument("--classes", type=int, default=None, help="K (default: from scribbles)")
    seg.add_argument("--patch", type=int, default=5)
    seg.add_argument("--N", type=int, default=30, dest="n_neighbors")
    seg.add_argument("--M", type=int, default=30, dest="scale_neighbor")
    seg.add_argument("--mu", type=float, default=30.0)
    seg.add_argument("--eps", type=float, default=1.0)
    seg.add_argument("--dt", type=float, default=0.01)
    seg.add_argument("--nmax", type=int, default=800)
    seg.add_argument("--seed", type=int, default=0)
    seg.add_argument("--format", choices=["ppm", "png"], default="ppm")
    seg.add_argument("--out", type=Path, default=Path("results/segmentation"))
    return parser


def cmd_generate(args: argparse.Namespace) -> int:
    dataset = generate(args.name, args.seed)
    out = args.out or Path(f"{args.name}.csv")
    save_csv_dataset(dataset, out)
    print(f"{out}: {dataset.n} rows, d={dataset.dim}, K={dataset.n_classes}")
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    if args.generator:
        dataset = generate(args.generator, args.seed)
    else:
        dataset = load_csv_dataset(args.csv, args.label_column)
    config = GraphConfig(N=args.n_neighbors, M=args.scale_neighbor)
    graph = build_graph(dataset.points, config)
    save_graph(graph, args.out)
    print(
        f"{args.out}: n={graph.n}, edges={graph.nnz // 2}, components={graph.n_components()}"
    )
    return EXIT_OK


def _overrides(args: argparse.Namespace) -> dict:
    return {
        "mu": args.mu,
        "eps": args.eps,
        "dt": args.dt,
        "nmax": args.nmax,
        "seed": args.seed,
        "runs": args.runs,
        "out": args.out,
    }


def _run_experiment(manager: ConfigManager) -> int:
    config = manager.validated()
    manager.save(Path(config.output_dir) / "config.resolved.json")
    result = ExperimentRunner(config).run()
    report = result.report
    print(
        f"{config.name} [{config.method}]: accuracy {100 * report.accuracy:.2f}% "
        f"(stddev {100 * report.stddev:.2f}%) over {report.runs} runs, "
        f"best {100 * report.best_accuracy:.2f}%, "
        f"mean time {report.mean_runtime_s:.2f}s -> {result.artifacts['report']}"
    )
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    manager = ConfigManager(args.config)
    manager.apply_overrides(_overrides(args))
    return _run_experiment(manager)


def cmd_baseline(args: argparse.Namespace) -> int:
    manager = ConfigManager(args.config)
    manager.apply_overrides(_overrides(args))
    manager.set("method", args.method)
    if args.eigenvectors is not None:
        manager.set("baseline.n_eigenvectors", args.eigenvectors)
    return _run_experiment(manager)


def cmd_segment_image(args: argparse.Namespace) -> int:
    graph_config = GraphConfig(N=args.n_neighbors, M=args.scale_neighbor)
    n_classes = args.classes
    if n_classes is None:
        n_classes = _classes_in_scribbles(args.scribbles)
    solver_config = SolverConfig(
        K=n_classes, mu=args.mu, eps=args.eps, dt=args.dt, nmax=args.nmax, seed=args.seed
    )
    args.out.mkdir(parents=True, exist_ok=True)
    result = segment_image_file(
        args.image,
        args.scribbles,
        graph_config,
        solver_config,
        output_prefix=args.out / args.image.stem,
        patch=args.patch,
        mask_suffix=f".{args.format}",
    )
    print(
        f"{len(result.mask_paths)} masks in {args.out}; "
        f"scribbles retained {100 * result.fidelity_retained():.1f}%"
    )
    return EXIT_OK


def _classes_in_scribbles(path: Path) -> int:
    return max(cls for _, _, _, cls in parse_scribbles(path)) + 1


COMMANDS = {
    "generate": cmd_generate,
    "graph": cmd_graph,
    "run": cmd_run,
    "baseline": cmd_baseline,
    "segment-image": cmd_segment_image,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except NumericalError as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL
    except (GLError, ValidationError, FileNotFoundError) as e:
        logger.error("%s", e)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
