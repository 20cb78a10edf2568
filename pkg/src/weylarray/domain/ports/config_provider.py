"""Port: Configuration provider: supply the run configuration."""

from abc import ABC, abstractmethod
from typing import Any


class ConfigProviderPort(ABC):
    """Contract for providing a run configuration to the application.

    The concrete return type is ``Any`` at the domain level; the
    ``RunConfig`` pydantic model is the typed contract one layer up.
    """

    @abstractmethod
    def get_config(self) -> Any:
        """Return the current run configuration object."""
        ...
