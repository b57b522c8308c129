"""
Loading, overriding and validating run configurations.
"""

import copy
import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml
from pydantic import ValidationError

from ..exceptions import ConfigError
from .schema import RunConfigFile

# CLI flag → (dotted section, accepted spellings of the key)
OVERRIDE_KEYS: Dict[str, Tuple[str, Tuple[str, ...]]] = {
    "mu": ("solver", ("mu",)),
    "eps": ("solver", ("eps",)),
    "dt": ("solver", ("dt",)),
    "nmax": ("solver", ("nmax", "n_max")),
    "seed": ("solver", ("seed",)),
    "runs": ("", ("runs",)),
    "out": ("", ("output_dir",)),
}

_ADAPTIVE_KEYS = ("eps0", "epsf", "eps_f", "delta_eps")


class ConfigManager:
    """Manages the configuration of one experiment."""

    def __init__(self, config_path: Optional[Path] = None, config: Optional[Dict[str, Any]] = None):
        self.config_path = Path(config_path) if config_path else None
        if config is not None:
            self.config = copy.deepcopy(config)
        elif self.config_path is not None:
            self.config = self._load_config()
        else:
            raise ConfigError("ConfigManager needs a config path or a mapping")

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from a JSON or YAML file."""
        if not self.config_path.exists():
            raise ConfigError(f"Config file not found: {self.config_path}")
        text = self.config_path.read_text(encoding="utf-8")
        try:
            if self.config_path.suffix.lower() in (".yaml", ".yml"):
                loaded = yaml.safe_load(text)
            else:
                loaded = json.loads(text)
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise ConfigError(f"Cannot parse {self.config_path}: {e}")
        if not isinstance(loaded, dict):
            raise ConfigError(f"{self.config_path} must contain a mapping at top level")
        return loaded

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value."""
        keys = key.split(".")
        value = self.config
        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any) -> None:
        """Set a configuration value."""
        keys = key.split(".")
        config = self.config
        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]
        config[keys[-1]] = value

    def apply_overrides(self, overrides: Dict[str, Any]) -> None:
        """Apply CLI flag values (None means "not given")."""
        for flag, value in overrides.items():
            if value is None:
                continue
            if flag not in OVERRIDE_KEYS:
                raise ConfigError(f"Unknown override {flag!r}")
            section, spellings = OVERRIDE_KEYS[flag]
            target = self.get(section, {}) if section else self.config
            key = next((s for s in spellings if isinstance(target, dict) and s in target), spellings[0])
            self.set(f"{section}.{key}" if section else key, value)
            if flag == "eps":
                solver = self.get("solver", {})
                for adaptive in _ADAPTIVE_KEYS:
                    solver.pop(adaptive, None)

    def validated(self) -> RunConfigFile:
        """Validate the merged mapping against the run schema."""
        try:
            return RunConfigFile.model_validate(self.config)
        except ValidationError as e:
            source = self.config_path or "config"
            raise ConfigError(f"Invalid configuration {source}:\n{e}")

    def save(self, path: Path) -> None:
        """Save the merged configuration as JSON."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.config, f, indent=2, sort_keys=True)
            f.write("\n")
