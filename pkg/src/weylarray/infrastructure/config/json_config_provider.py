"""JSON config provider: implements ConfigProviderPort.

Wraps config/loader.py so the composition root never touches the cache
directly.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from weylarray.config.models import RunConfig
from weylarray.domain.ports.config_provider import ConfigProviderPort


class JsonConfigProvider(ConfigProviderPort):
    """Load a run configuration from a JSON document.

    ``workers`` (when given) overrides the document's worker count; it is
    the only run setting the command line may change.
    """

    def __init__(self, config_path: Optional[Path] = None, workers: Optional[int] = None) -> None:
        self._config_path = config_path
        self._workers = workers
        self._config: Optional[RunConfig] = None

    def get_config(self) -> RunConfig:
        """Return the validated configuration, loading lazily."""
        if self._config is None:
            from weylarray.config.loader import get_config, load_config

            config = load_config(self._config_path) if self._config_path else get_config()
            if self._workers is not None:
                config = config.model_copy(update={"workers": self._workers})
            self._config = config
        return self._config
