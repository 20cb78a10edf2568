"""Atomic result writer: implements ResultWriterPort.

CSV tables start with ``# key: value`` metadata lines; JSON documents
carry a top-level ``metadata`` object. Files are written to a temporary
sibling and renamed into place, so readers never see a partial file.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import tempfile
from collections.abc import Iterable, Sequence
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel

from weylarray.domain.ports.result_writer import ResultWriterPort

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """``json.dumps`` default hook for numpy, pydantic and path values."""
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return {"real": value.real.tolist(), "imag": value.imag.tolist()}
        return value.tolist()
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


class AtomicFileWriter(ResultWriterPort):
    """Write run outputs under ``directory`` with an optional file-name prefix."""

    def __init__(self, directory: Path, prefix: str = "") -> None:
        self._directory = Path(directory)
        self._prefix = prefix

    @property
    def directory(self) -> Path:
        return self._directory

    def path_for(self, name: str) -> Path:
        return self._directory / f"{self._prefix}{name}"

    # -- Public API ----------------------------------------------------------

    def write_csv(
        self,
        name: str,
        header: Sequence[str],
        rows: Iterable[Sequence[Any]],
        metadata: dict[str, Any],
    ) -> Path:
        buffer = io.StringIO()
        for key in sorted(metadata):
            buffer.write(f"# {key}: {_cell(metadata[key])}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        return self._replace(self.path_for(name), buffer.getvalue())

    def write_json(self, name: str, payload: Any, metadata: dict[str, Any]) -> Path:
        document: dict[str, Any] = {"metadata": metadata}
        if isinstance(payload, dict):
            document.update(payload)
        else:
            document["data"] = payload
        text = json.dumps(document, indent=2, sort_keys=True, default=to_jsonable)
        return self._replace(self.path_for(name), text + "\n")

    # -- Internals -----------------------------------------------------------

    def _replace(self, target: Path, text: str) -> Path:
        """Write to temp, then rename."""
        target.parent.mkdir(parents=True, exist_ok=True)
        tmp_fd, tmp_path = tempfile.mkstemp(dir=target.parent, suffix=".tmp")
        try:
            with open(tmp_fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            Path(tmp_path).replace(target)
        except Exception:
            Path(tmp_path).unlink(missing_ok=True)
            raise
        logger.debug("Wrote %s", target)
        return target
