import json
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dotenv import load_dotenv

REQUIRED_FIELDS = ["oracle_limit", "search_budget", "generator_retries", "default_k", "refine_iterations", "routes"]

DEFAULT_CONFIG_PATH = Path("config") / "general.json"

DEFAULT_ROUTES = [{"name": "th1"}, {"name": "th2"}, {"name": "th3"}, {"name": "main"}, {"name": "oracle"}]

logger = logging.getLogger("settings")


class SettingsError(Exception):
    """Raised when the configuration file is missing fields or holds bad values"""
    pass


@dataclass(frozen=True)
class Settings:
    oracle_limit: int = 26
    search_budget: int = 2_000_000
    generator_retries: int = 10_000
    default_k: int = 1
    refine_iterations: int = 32
    routes: List[Dict[str, Any]] = field(default_factory=lambda: [dict(route) for route in DEFAULT_ROUTES])
    source: Optional[str] = None

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with the given non-None fields replaced"""
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})


def _validate(config: Dict[str, Any]) -> None:
    missing_fields = [name for name in REQUIRED_FIELDS if name not in config]
    if missing_fields:
        raise SettingsError(f"Missing required fields: {', '.join(missing_fields)}")

    for name in ("oracle_limit", "search_budget", "generator_retries", "refine_iterations"):
        if not isinstance(config[name], int) or config[name] <= 0:
            raise SettingsError(f"{name} must be a positive integer")
    if not isinstance(config["default_k"], int) or config["default_k"] < 0:
        raise SettingsError("default_k must be a non-negative integer")

    routes = config["routes"]
    if not isinstance(routes, list) or not all(isinstance(route, dict) and "name" in route for route in routes):
        raise SettingsError("routes must be a list of objects with a 'name' field")


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise SettingsError(f"{name} must be an integer, got {raw!r}")


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """Load settings from the JSON config, then apply environment overrides.

    Resolution order for the file: explicit ``path``, ``ROMANPY_CONFIG``, then
    ``config/general.json``. A missing default file is not an error; the
    built-in defaults are used instead.
    """
    load_dotenv()
    explicit = path is not None or os.getenv("ROMANPY_CONFIG")
    config_path = Path(path or os.getenv("ROMANPY_CONFIG") or DEFAULT_CONFIG_PATH)

    try:
        with open(config_path, "r") as f:
            config = json.load(f)
        _validate(config)
        settings = Settings(
            oracle_limit=config["oracle_limit"],
            search_budget=config["search_budget"],
            generator_retries=config["generator_retries"],
            default_k=config["default_k"],
            refine_iterations=config["refine_iterations"],
            routes=list(config["routes"]),
            source=str(config_path),
        )
    except FileNotFoundError:
        if explicit:
            logger.error(f"Config file not found: {config_path}")
            raise
        logger.debug(f"No config at {config_path}, using defaults")
        settings = Settings()
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {config_path}")
        raise SettingsError(f"Invalid JSON in {config_path}: {e}") from e

    return settings.with_overrides(
        oracle_limit=_env_int("ROMANPY_ORACLE_LIMIT"),
        search_budget=_env_int("ROMANPY_SEARCH_BUDGET"),
    )
