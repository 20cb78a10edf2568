"""Application layer: outcome of one command run."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from weylarray.domain.models.enums import Command


@dataclass
class RunOutcome:
    """Files written by a use case plus a short summary for the terminal.

    Attributes:
        command: The analysis that ran.
        files: Written paths, in write order.
        summary: Flat key/value pairs shown by the CLI.
    """

    command: Command
    files: list[Path] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
