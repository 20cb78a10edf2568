"""Result types of the spectral analyses (bands, DOS, contours, phase diagram)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from weylarray.domain.models.bands import BandSolution
from weylarray.domain.models.enums import Facet
from weylarray.domain.models.lattice import KPath

Vector3 = tuple[float, float, float]


# ---------------------------------------------------------------------------
# Band structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BandStructure:
    """One BandSolution per path sample plus the light-cone flag of each sample."""

    path: KPath
    solutions: list[BandSolution]
    in_light_cone: np.ndarray

    @property
    def frequencies(self) -> np.ndarray:
        """(n_samples, n_bands) array of omega offsets."""
        return np.array([s.frequencies for s in self.solutions])

    @property
    def decay_rates(self) -> np.ndarray:
        return np.array([s.decay_rates for s in self.solutions])

    def rows(self) -> list[tuple[float, int, float, float, bool]]:
        """Flattened (s, band, omega, gamma, in_light_cone) table."""
        out = []
        for s, sol, cone in zip(self.path.arc_length, self.solutions, self.in_light_cone):
            for band in range(sol.n_bands):
                out.append(
                    (
                        float(s),
                        band,
                        float(sol.frequencies[band]),
                        float(sol.decay_rates[band]),
                        bool(cone),
                    )
                )
        return out


# ---------------------------------------------------------------------------
# Density of states
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DosHistogram:
    """Histogram of band frequencies over a uniform zone grid.

    ``counts`` are states per bin normalised so that their total equals the
    number of bands; ``samples`` keeps the raw frequencies for window counts.
    """

    bin_edges: np.ndarray
    counts: np.ndarray
    grid_resolution: int
    samples: np.ndarray
    n_kpoints: int

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[1:] + self.bin_edges[:-1])

    @property
    def bin_width(self) -> float:
        return float(self.bin_edges[1] - self.bin_edges[0])

    @property
    def density(self) -> np.ndarray:
        """D(omega): states per unit frequency per unit zone volume."""
        return self.counts / self.bin_width

    @property
    def total_weight(self) -> float:
        return float(self.counts.sum())

    def window_count(self, center: float, width: float) -> float:
        """States per k-point inside the closed window [center - w/2, center + w/2]."""
        lo, hi = center - 0.5 * width, center + 0.5 * width
        inside = np.count_nonzero((self.samples >= lo) & (self.samples <= hi))
        return inside / self.n_kpoints


# ---------------------------------------------------------------------------
# Planes and contours
# ---------------------------------------------------------------------------


class PlaneCut(BaseModel):
    """A planar cut of the zone: k = pi/a (origin + s u + t v).

    All coordinates are in units of pi/a.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    origin: Vector3 = (0.0, 0.0, 0.0)
    u: Vector3 = (1.0, 1.0, 0.0)
    v: Vector3 = (0.0, 0.0, 1.0)
    u_range: tuple[float, float] = (-1.0, 1.0)
    v_range: tuple[float, float] = (-1.0, 1.0)

    @classmethod
    def diagonal(cls) -> PlaneCut:
        """The k_x - k_y = 0 plane containing the k_z axis."""
        return cls()

    @classmethod
    def constant_kz(cls, kz_over_pi: float) -> PlaneCut:
        return cls(origin=(0.0, 0.0, kz_over_pi), u=(1.0, 0.0, 0.0), v=(0.0, 1.0, 0.0))

    def axes(self, grid_n: int) -> tuple[np.ndarray, np.ndarray]:
        """Sample positions (s, t) including both ends of each range."""
        s = np.linspace(self.u_range[0], self.u_range[1], grid_n)
        t = np.linspace(self.v_range[0], self.v_range[1], grid_n)
        return s, t

    def points(self, grid_n: int) -> np.ndarray:
        """(grid_n, grid_n, 3) array of k-points in 1/a, indexed [i_s, i_t]."""
        s, t = self.axes(grid_n)
        origin, u, v = (np.asarray(x, dtype=float) for x in (self.origin, self.u, self.v))
        grid = origin + s[:, None, None] * u + t[None, :, None] * v
        return np.pi * grid

    def to_k(self, s: np.ndarray, t: np.ndarray) -> np.ndarray:
        """Map fractional plane coordinates to k-points in 1/a."""
        origin, u, v = (np.asarray(x, dtype=float) for x in (self.origin, self.u, self.v))
        return np.pi * (origin + np.asarray(s)[:, None] * u + np.asarray(t)[:, None] * v)


@dataclass(frozen=True, eq=False)
class ContourLine:
    """One polyline of an isocontour.

    ``points`` are k-points in 1/a; ``weights`` (optional) are per-vertex
    polarization weights (W_x, W_y, W_z) and ``facets`` per-vertex facet labels.
    A closed line with a non-zero ``winding`` wraps around the zone torus.
    ``cut_ends`` flags open-line ends stopped by a mask, and
    ``marker_distance`` holds the distance of each open end to the nearest
    marker in grid cells.
    """

    points: np.ndarray
    closed: bool
    weights: Optional[np.ndarray] = None
    facets: Optional[list[Facet]] = None
    winding: tuple[int, int] = (0, 0)
    cut_ends: tuple[bool, bool] = (False, False)
    marker_distance: Optional[tuple[float, float]] = None

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def wraps_torus(self) -> bool:
        return self.closed and any(self.winding)

    @property
    def is_cut(self) -> bool:
        return any(self.cut_ends)

    @property
    def enclosed_area(self) -> float:
        """Shoelace area of a closed line projected on its own best-fit plane."""
        if not self.closed or self.wraps_torus or len(self) < 3:
            return 0.0
        centered = self.points - self.points.mean(axis=0)
        _, _, vt = np.linalg.svd(centered, full_matrices=False)
        xy = centered @ vt[:2].T
        x, y = xy[:, 0], xy[:, 1]
        return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


@dataclass(frozen=True, eq=False)
class EquifrequencyContour:
    """All polylines of one band at one frequency on one plane."""

    plane: PlaneCut
    frequency: float
    band: int
    lines: list[ContourLine] = field(default_factory=list)
    markers: Optional[np.ndarray] = None  # e.g. projected Weyl points

    @property
    def is_empty(self) -> bool:
        return not self.lines


# ---------------------------------------------------------------------------
# Phase diagram
# ---------------------------------------------------------------------------


class PhaseDiagramCell(BaseModel):
    """Outcome of one (a/lambda_0, muB/gamma_tilde_0) configuration."""

    a_over_lambda: float
    muB: float
    omega_W: Optional[float] = None
    k_W: Optional[float] = Field(default=None, description="|k_W| in units of pi/a")
    dos_window_count: Optional[float] = None
    in_light_cone: Optional[bool] = None
    isolated: Optional[bool] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.omega_W is not None


class PhaseDiagram(BaseModel):
    """Weyl-isolation map over the parameter grid (row-major: muB outer, a inner)."""

    a_grid: list[float]
    muB_grid: list[float]
    window: float
    threshold: float
    grid_n: int
    cells: list[PhaseDiagramCell] = Field(default_factory=list)

    def cell(self, a_over_lambda: float, muB: float) -> PhaseDiagramCell:
        for c in self.cells:
            if np.isclose(c.a_over_lambda, a_over_lambda) and np.isclose(c.muB, muB):
                return c
        raise KeyError(f"No cell at a/lambda={a_over_lambda}, muB={muB}")


# ---------------------------------------------------------------------------
# Bulk projection
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BulkProjection:
    """Frequency envelopes of bulk bands projected along the cut direction."""

    k_par: np.ndarray  # (N, 3) in 1/a, first component zero
    band_min: np.ndarray  # (N, n_bands)
    band_max: np.ndarray  # (N, n_bands)
    samples: np.ndarray  # (N, n_kx, n_bands) raw frequencies

    def covers(self, index: int, omega: float, tol: float = 0.0) -> bool:
        """True if omega falls inside any projected band at sample ``index``."""
        lo, hi = self.band_min[index], self.band_max[index]
        return bool(np.any((omega >= lo - tol) & (omega <= hi + tol)))


@dataclass(frozen=True, eq=False)
class NodalLineScan:
    """Degeneracy points of two adjacent bands found on a plane cut."""

    plane: PlaneCut
    band: int  # lower band of the degenerate pair
    points: np.ndarray  # (N, 3) degenerate grid points in 1/a
    frequencies: np.ndarray  # (N,) mean frequency of the pair at each point
    contour: Optional[EquifrequencyContour] = None

    @property
    def detected(self) -> bool:
        return bool(self.points.shape[0])

    @property
    def mean_frequency(self) -> Optional[float]:
        return float(self.frequencies.mean()) if self.detected else None
