"""
JSON report files.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Sequence

logger = logging.getLogger(__name__)


def write_report(payload: Dict[str, Any], path: Path) -> Path:
    """Write a report with sorted keys so identical runs give identical bytes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info("Wrote report %s", path)
    return path


def write_timings(runtimes: Sequence[float], path: Path) -> Path:
    """Wall-clock runtimes per run; kept apart from the deterministic report."""
    payload = {
        "runtimes_s": [float(t) for t in runtimes],
        "mean_runtime_s": float(sum(runtimes) / len(runtimes)) if runtimes else None,
    }
    return write_report(payload, path)
