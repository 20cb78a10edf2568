"""Shared fixtures for the weylarray test suite."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from weylarray.config.loader import clear_cache
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.services.geometry import bcc_lattice, cub_lattice


@pytest.fixture(autouse=True)
def _fresh_cache():
    """Ensure a clean config cache for every test."""
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def bcc():
    return bcc_lattice()


@pytest.fixture
def cub():
    return cub_lattice()


@pytest.fixture
def weyl_params() -> ArrayParams:
    """The reference Weyl configuration: a/lambda = 0.1, muB = 5 gamma_tilde_0."""
    return ArrayParams(lattice_constant_ratio=0.1, zeeman_ratio=5.0)


@pytest.fixture
def write_config(tmp_path):
    """Write a run document into tmp_path, output redirected under tmp_path/out."""

    def _write(data: dict | None = None, name: str = "run.json") -> Path:
        document = {"output": {"directory": str(tmp_path / "out")}}
        document.update(data or {})
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write
