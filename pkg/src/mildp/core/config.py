import logging
import os
from typing import Any, Dict, Optional

import yaml


class ConfigManager:
    """
    Centralized configuration manager for mildp.
    Loads settings from a YAML file.
    """
    _instance: Optional['ConfigManager'] = None
    _config: Dict[str, Any] = {}

    DEFAULTS: Dict[str, Any] = {
        "logging": {
            "level": "WARNING",
            "format": "[%(levelname)s] %(name)s: %(message)s",
        },
        "certify": {"max_cardinality": 10},
        "search": {"workers": 1, "max_results": 10, "cardinality": 4, "executor": "thread"},
        "output": {"json_indent": 2},
    }

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(ConfigManager, cls).__new__(cls)
        return cls._instance

    def load_config(self, config_path: Optional[str] = None):
        """Loads configuration from a YAML file, falling back to DEFAULTS."""
        config_path = config_path or os.environ.get("MILDP_CONFIG", "config.yml")
        loaded: Dict[str, Any] = {}
        if os.path.exists(config_path):
            with open(config_path, "r", encoding="utf-8") as f:
                loaded = yaml.safe_load(f) or {}

        self._config = {}
        for section, values in self.DEFAULTS.items():
            merged = dict(values)
            merged.update(loaded.get(section) or {})
            self._config[section] = merged
        for section, values in loaded.items():
            self._config.setdefault(section, values)

        self._setup_logging()

    def _setup_logging(self):
        logging_config = self._config.get("logging", {})
        level = str(logging_config.get("level", "WARNING"))
        log_format = logging_config.get("format", self.DEFAULTS["logging"]["format"])

        logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING),
                            format=log_format)

    def get(self, key: str, default: Any = None) -> Any:
        """Gets a top-level configuration section by key."""
        return self._config.get(key, default)

    def setting(self, section: str, key: str, default: Any = None) -> Any:
        """Gets one value inside a section, e.g. setting("search", "workers")."""
        values = self._config.get(section) or {}
        return values.get(key, default)


def get_logger(name: str) -> logging.Logger:
    """Returns a configured logger instance."""
    return logging.getLogger(name)


config_manager = ConfigManager()
config_manager.load_config()
