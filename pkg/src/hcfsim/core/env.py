"""Environment variable utilities for hcfsim."""

import os
from pathlib import Path
from typing import Optional

from .errors import ConfigurationError

WORKERS_VAR = "HCFSIM_WORKERS"


class Env:
    """Lazy-loading environment variable accessor.

    Loads a .env file from the working directory on first access if
    python-dotenv is installed.

    Usage:
        from hcfsim.core.env import env

        workers = env.workers() or 1
    """

    def __init__(self):
        self._loaded = False

    def _load(self):
        """Load .env file if not already loaded."""
        if self._loaded:
            return

        try:
            from dotenv import load_dotenv

            env_file = Path.cwd() / ".env"
            if env_file.exists():
                load_dotenv(env_file)
        except ImportError:
            # python-dotenv not installed, just use existing env vars
            pass

        self._loaded = True

    def get(self, name: str, default: str = "") -> str:
        """Get environment variable with optional default."""
        self._load()
        return os.environ.get(name, default)

    def workers(self) -> Optional[int]:
        """Worker count from HCFSIM_WORKERS, or None when unset."""
        raw = self.get(WORKERS_VAR).strip()
        if not raw:
            return None
        try:
            value = int(raw)
        except ValueError:
            raise ConfigurationError(
                f"{WORKERS_VAR} must be a positive integer, got {raw!r}"
            ) from None
        if value < 1:
            raise ConfigurationError(f"{WORKERS_VAR} must be a positive integer, got {value}")
        return value


env = Env()
