"""
Configuration management for multiclass GL experiments.
"""

from .manager import ConfigManager, OVERRIDE_KEYS
from .schema import BaselineSection, DatasetSection, RunConfigFile

__all__ = [
    "BaselineSection",
    "ConfigManager",
    "DatasetSection",
    "OVERRIDE_KEYS",
    "RunConfigFile",
]
