"""
Worker-count resolution for joblib.
"""

import logging
import os
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def resolve_n_jobs(requested: Optional[int] = None) -> int:
    """Return the worker count, capped by GLM_THREADS when set."""
    cap_raw = os.getenv("GLM_THREADS")
    cap: Optional[int] = None
    if cap_raw:
        try:
            cap = max(1, int(cap_raw))
        except ValueError:
            logger.warning("Ignoring non-integer GLM_THREADS=%r", cap_raw)

    cpu = os.cpu_count() or 1
    n_jobs = requested if requested and requested > 0 else cpu
    if cap is not None:
        n_jobs = min(n_jobs, cap)
    return max(1, n_jobs)
