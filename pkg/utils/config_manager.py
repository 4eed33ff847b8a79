import json
import logging
import os
from typing import Dict, Any, Optional

logger = logging.getLogger(__name__)

DEFAULTS_FILE = "defaults.json"


class ConfigManager:
    """Manages configuration loading and validation"""

    def __init__(self, config_dir: str = "config"):
        self.config_dir = config_dir

    def _resolve(self, filename: str) -> str:
        # Support absolute or relative path
        return filename if os.path.isabs(filename) else os.path.join(self.config_dir, filename)

    def load_config(self, filename: str) -> Optional[Dict[str, Any]]:
        """Load configuration from JSON file"""
        try:
            config_path = self._resolve(filename)
            if not os.path.exists(config_path):
                return None
            with open(config_path, 'r', encoding='utf-8') as f:
                config = json.load(f)
            if self.validate_config_structure(config):
                return config
            logger.warning("Ignoring %s: every top-level value must be an object", config_path)
            return None
        except (json.JSONDecodeError, IOError) as e:
            logger.warning("Error loading config: %s", e)
            return None

    def validate_config_structure(self, config: Dict[str, Any]) -> bool:
        """Validate configuration structure: all top-level values must be dicts"""
        if not isinstance(config, dict):
            return False
        for value in config.values():
            if not isinstance(value, dict):
                return False
        return True

    def get_section(self, name: str) -> Dict[str, Any]:
        """Section of defaults.json layered over the built-in defaults"""
        section = dict(self.get_default_config().get(name, {}))
        config = self.load_config(DEFAULTS_FILE)
        if config and name in config:
            section.update(config[name])
        return section

    def get_tolerance(self, name: str, override: Optional[float] = None) -> float:
        """Named tolerance; an explicit override (flag or env var) wins"""
        if override is not None:
            return float(override)
        return float(self.get_section("tolerances")[name])

    def get_default_config(self) -> Dict[str, Any]:
        """Get default configuration"""
        return {
            "tolerances": {
                "realizability": 1e-8,
                "symplectic": 1e-9,
                "dc_match": 1e-8,
                "phase_insensitive": 1e-9,
                "noise_gap": 1e-8
            },
            "sweep": {
                "omega_min": 1e4,
                "omega_max": 1e9,
                "points": 200,
                "spacing": "log"
            },
            "probe": {
                "samples": 50,
                "span_decades": 3
            },
            "output": {
                "directory": "artifacts",
                "csv_digits": 17
            }
        }
