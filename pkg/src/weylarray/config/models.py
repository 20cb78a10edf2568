"""Pydantic models for run configuration.

These models validate and type the JSON document that drives one
``weylarray`` run. Every block rejects unknown keys so a typo in a
checked-in recipe fails loudly instead of silently using a default.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from weylarray.domain.models.analysis import PlaneCut
from weylarray.domain.models.enums import LatticeKind, SearchMode
from weylarray.domain.models.lattice_sum import EwaldConfig
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.rules.constants import (
    AXIS_SCAN_SAMPLES,
    DEFAULT_BULK_PATH,
    DEFAULT_EDGE_FRACTION,
    DEFAULT_FACET_THRESHOLD,
    DEFAULT_ISOLATION_THRESHOLD,
    DEFAULT_SPHERE_GRID,
    DEFAULT_SPHERE_RADIUS,
    DEFAULT_SURFACE_PATH,
    DEFAULT_WINDOW,
    GAP_TOLERANCE,
    MIN_DOS_GRID,
    MULTISTART_POINTS,
    SUBRADIANCE_CUTOFF,
)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------------------
# Analysis blocks
# ---------------------------------------------------------------------------


class PathSettings(_Strict):
    """High-symmetry path for ``bands``."""

    labels: list[str] = Field(default_factory=lambda: list(DEFAULT_BULK_PATH), min_length=1)
    samples: int = Field(41, ge=2, description="points per segment, both ends included")


class DosSettings(_Strict):
    """Uniform-grid histogram DOS."""

    grid_n: int = Field(16, ge=MIN_DOS_GRID)
    bin_width: float = Field(0.05, gt=0.0, description="gamma_tilde_0 units")


class ContourSettings(_Strict):
    """Equifrequency contours on a plane cut.

    ``frequencies`` are absolute offsets from omega_0; ``weyl_offsets`` are
    added to the located omega_W (both in gamma_tilde_0 units).
    """

    plane: PlaneCut = Field(default_factory=PlaneCut.diagonal)
    frequencies: list[float] = Field(default_factory=list)
    weyl_offsets: list[float] = Field(default_factory=lambda: [0.0])
    grid_n: int = Field(61, ge=3)
    nodal_line_plane: PlaneCut | None = None


class PhaseDiagramSettings(_Strict):
    """Sweep bounds (inclusive) and isolation criterion."""

    a_min: float = Field(0.05, gt=0.0)
    a_max: float = Field(0.55, gt=0.0)
    a_steps: int = Field(6, ge=1)
    muB_min: float = 1.0
    muB_max: float = 20.0
    muB_steps: int = Field(6, ge=1)
    window: float = Field(DEFAULT_WINDOW, gt=0.0)
    threshold: float = Field(DEFAULT_ISOLATION_THRESHOLD, gt=0.0)
    grid_n: int = Field(8, ge=MIN_DOS_GRID)

    @model_validator(mode="after")
    def _ordered(self) -> PhaseDiagramSettings:
        if self.a_max < self.a_min or self.muB_max < self.muB_min:
            raise ValueError("sweep bounds must satisfy min <= max")
        return self

    @property
    def a_grid(self) -> list[float]:
        return [float(x) for x in np.linspace(self.a_min, self.a_max, self.a_steps)]

    @property
    def muB_grid(self) -> list[float]:
        return [float(x) for x in np.linspace(self.muB_min, self.muB_max, self.muB_steps)]


class SlabSettings(_Strict):
    """Slab width, surface grid and arc extraction knobs."""

    width: float = Field(15.5, gt=0.0, description="w / a, a multiple of 1/2")
    grid_n: int = Field(48, ge=3)
    path: list[str] = Field(default_factory=lambda: list(DEFAULT_SURFACE_PATH), min_length=1)
    samples: int = Field(41, ge=2)
    subradiance_cutoff: float = Field(SUBRADIANCE_CUTOFF, gt=0.0, description="gamma_0 units")
    edge_fraction: float = Field(DEFAULT_EDGE_FRACTION, gt=0.0, le=0.5)
    facet_threshold: float = Field(DEFAULT_FACET_THRESHOLD, gt=0.5, le=1.0)
    projection_kx: int = Field(0, ge=0, description="k_x samples of the bulk projection, 0 = off")
    omega: float | None = Field(None, description="arc frequency; omega_W of the bulk if unset")

    @field_validator("width")
    @classmethod
    def _half_integer(cls, v: float) -> float:
        if not np.isclose(2.0 * v, round(2.0 * v), atol=1e-9):
            raise ValueError("slab width w/a must be a multiple of 1/2")
        return v


class WeylSettings(_Strict):
    """Node search, chirality and isolation."""

    search: SearchMode = SearchMode.AXIS
    gap_tol: float = Field(GAP_TOLERANCE, gt=0.0)
    scan_samples: int = Field(AXIS_SCAN_SAMPLES, ge=8)
    starts: int = Field(MULTISTART_POINTS, ge=1)
    chirality: bool = True
    sphere_radius: float = Field(DEFAULT_SPHERE_RADIUS, gt=0.0, description="pi/a units")
    sphere_grid: int = Field(DEFAULT_SPHERE_GRID, ge=4)
    isolation_grid_n: int = Field(16, ge=MIN_DOS_GRID)
    window: float = Field(DEFAULT_WINDOW, gt=0.0)
    threshold: float = Field(DEFAULT_ISOLATION_THRESHOLD, gt=0.0)


class TrajectorySettings(_Strict):
    """Zeeman sweep at fixed a/lambda_0 (bounds inclusive)."""

    muB_min: float = 5.0
    muB_max: float = 14.0
    muB_step: float = Field(0.5, gt=0.0)

    @property
    def values(self) -> list[float]:
        n = int(np.floor((self.muB_max - self.muB_min) / self.muB_step + 1e-9)) + 1
        return [float(self.muB_min + i * self.muB_step) for i in range(max(n, 0))]


class OutputSettings(_Strict):
    directory: Path = Path("results")
    prefix: str = ""


# ---------------------------------------------------------------------------
# Root
# ---------------------------------------------------------------------------


class RunConfig(_Strict):
    """Root configuration: validated representation of a run document."""

    lattice: LatticeKind = LatticeKind.BCC
    a_over_lambda: float = Field(0.1, gt=0.0)
    muB_over_gamma_tilde: float = 5.0
    workers: int = Field(1, ge=1)
    seed: int = 0

    path: PathSettings = Field(default_factory=PathSettings)
    dos: DosSettings = Field(default_factory=DosSettings)
    contours: ContourSettings = Field(default_factory=ContourSettings)
    phase_diagram: PhaseDiagramSettings = Field(default_factory=PhaseDiagramSettings)
    slab: SlabSettings = Field(default_factory=SlabSettings)
    weyl: WeylSettings = Field(default_factory=WeylSettings)
    ewald: EwaldConfig = Field(default_factory=EwaldConfig)
    trajectory: TrajectorySettings = Field(default_factory=TrajectorySettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    @field_validator("lattice")
    @classmethod
    def _bulk_only(cls, v: LatticeKind) -> LatticeKind:
        if v is LatticeKind.SLAB:
            raise ValueError("lattice must be 'bcc' or 'cub'; the slab is configured in 'slab'")
        return v

    @property
    def params(self) -> ArrayParams:
        return ArrayParams(
            lattice_constant_ratio=self.a_over_lambda, zeeman_ratio=self.muB_over_gamma_tilde
        )

    def canonical_json(self) -> str:
        """Key-sorted JSON of the full config, defaults included."""
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        """sha256 of the canonical JSON with the worker count left out."""
        payload = self.model_dump(mode="json")
        payload.pop("workers", None)
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
