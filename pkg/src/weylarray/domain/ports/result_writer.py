"""Port: Result writer: persist tables and records produced by a run."""

from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any


class ResultWriterPort(ABC):
    """Contract for writing run outputs.

    Every file carries ``metadata`` (config hash, code version, command);
    implementations must never leave a partially written file behind.
    """

    @abstractmethod
    def write_csv(
        self,
        name: str,
        header: Sequence[str],
        rows: Iterable[Sequence[Any]],
        metadata: dict[str, Any],
    ) -> Path:
        """Write a CSV table and return its path."""
        ...

    @abstractmethod
    def write_json(self, name: str, payload: Any, metadata: dict[str, Any]) -> Path:
        """Write a JSON document and return its path."""
        ...
