"""Band structures, densities of states, isocontours and projections."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from functools import partial
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from weylarray.domain.models.analysis import (
    BandStructure,
    BulkProjection,
    ContourLine,
    DosHistogram,
    EquifrequencyContour,
    NodalLineScan,
    PlaneCut,
)
from weylarray.domain.models.bands import BandSolution
from weylarray.domain.models.lattice import KPath, LatticeGeometry
from weylarray.domain.models.lattice_sum import EwaldConfig
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.ports.sweep_executor import InlineExecutor, SweepExecutorPort
from weylarray.domain.rules.constants import GAP_TOLERANCE, MIN_DOS_GRID, RESONANCE_MARGIN
from weylarray.domain.services.bloch import band_frequencies, solve
from weylarray.domain.services.contours import isolines_on_plane
from weylarray.domain.services.geometry import diffraction_resonant, in_light_cone

logger = logging.getLogger(__name__)


def _frequencies_at(
    lattice: LatticeGeometry, params: ArrayParams, config: EwaldConfig, k: np.ndarray
) -> np.ndarray:
    return band_frequencies(lattice, params, k, config)


def _solution_at(
    lattice: LatticeGeometry, params: ArrayParams, config: EwaldConfig, k: np.ndarray
) -> BandSolution:
    return solve(lattice, params, k, config)


def frequency_grid(
    lattice: LatticeGeometry,
    params: ArrayParams,
    points: np.ndarray,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> np.ndarray:
    """Sorted band frequencies at every k of a (..., 3) array; shape (..., n_bands)."""
    executor = executor or InlineExecutor()
    flat = np.asarray(points, dtype=float).reshape(-1, 3)
    work = partial(_frequencies_at, lattice, params, config or EwaldConfig())
    values = np.array(executor.map(work, list(flat)))
    return values.reshape(*np.shape(points)[:-1], lattice.matrix_dimension)


# ---------------------------------------------------------------------------
# Band structure
# ---------------------------------------------------------------------------


def band_structure(
    lattice: LatticeGeometry,
    params: ArrayParams,
    path: KPath,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> BandStructure:
    """One BandSolution per path sample plus its light-cone flag."""
    executor = executor or InlineExecutor()
    work = partial(_solution_at, lattice, params, config or EwaldConfig())
    solutions = executor.map(work, list(path.points))
    cone = np.array([in_light_cone(k, params.k0a) for k in path.points])
    logger.info("Band structure: %d samples, %d bands", len(path), lattice.matrix_dimension)
    return BandStructure(path=path, solutions=solutions, in_light_cone=cone)


# ---------------------------------------------------------------------------
# Density of states
# ---------------------------------------------------------------------------


def zone_grid(lattice: LatticeGeometry, grid_n: int) -> np.ndarray:
    """Gamma-centred uniform grid of grid_n^d points covering the zone once."""
    frac = (np.arange(grid_n) - grid_n // 2) / grid_n
    axes = [frac] * lattice.dimensionality
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
    return mesh @ lattice.reciprocal_basis


def histogram_frequencies(
    samples: np.ndarray, n_kpoints: int, bin_width: float, grid_resolution: int
) -> DosHistogram:
    """Histogram band frequencies with weight 1/n_kpoints per state."""
    flat = np.asarray(samples, dtype=float).ravel()
    lo = np.floor(flat.min() / bin_width) * bin_width
    hi = np.ceil(flat.max() / bin_width) * bin_width + bin_width
    edges = lo + bin_width * np.arange(int(round((hi - lo) / bin_width)) + 1)
    counts, _ = np.histogram(flat, bins=edges)
    return DosHistogram(
        bin_edges=edges,
        counts=counts / n_kpoints,
        grid_resolution=grid_resolution,
        samples=flat,
        n_kpoints=n_kpoints,
    )


def density_of_states(
    lattice: LatticeGeometry,
    params: ArrayParams,
    grid_n: int,
    bin_width: float,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> DosHistogram:
    """Histogram DOS over a uniform Gamma-centred grid (weights 1 / grid_n^3).

    Grid points on a diffraction resonance are dropped and the weights
    renormalised over the remaining ones.
    """
    if grid_n < MIN_DOS_GRID:
        raise ValueError(f"grid_n must be >= {MIN_DOS_GRID}")
    if bin_width <= 0.0:
        raise ValueError("bin_width must be > 0")
    config = config or EwaldConfig()
    points = zone_grid(lattice, grid_n)
    resonant = diffraction_resonant(
        lattice, points, params.k0a, RESONANCE_MARGIN * config.resonance_tolerance
    )
    if resonant.any():
        logger.warning("DOS grid: %d resonant k-point(s) left out", int(resonant.sum()))
        points = points[~resonant]
    freqs = frequency_grid(lattice, params, points, config, executor)
    logger.info("DOS grid %d^%d done", grid_n, lattice.dimensionality)
    return histogram_frequencies(freqs, points.shape[0], bin_width, grid_n)


# ---------------------------------------------------------------------------
# Equifrequency contours
# ---------------------------------------------------------------------------


def contours_from_field(
    band_field: np.ndarray,
    plane: PlaneCut,
    frequencies: Sequence[float],
    markers: Optional[np.ndarray] = None,
) -> list[EquifrequencyContour]:
    """Isolines of every band at every frequency from a (n, n, bands) field."""
    grid_n = band_field.shape[0]
    result = []
    for omega in frequencies:
        for band in range(band_field.shape[-1]):
            lines = isolines_on_plane(band_field[:, :, band], omega, plane, grid_n)
            if lines:
                result.append(
                    EquifrequencyContour(
                        plane=plane,
                        frequency=float(omega),
                        band=band,
                        lines=lines,
                        markers=markers,
                    )
                )
    return result


def equifrequency_contours(
    lattice: LatticeGeometry,
    params: ArrayParams,
    plane: PlaneCut,
    frequencies: Sequence[float],
    grid_n: int,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
    markers: Optional[np.ndarray] = None,
) -> list[EquifrequencyContour]:
    """Marching-squares contours omega_nu(k) = omega on a plane, per band.

    Only non-empty contours are returned; an empty list is a valid result.
    """
    points = plane.points(grid_n)
    band_field = frequency_grid(lattice, params, points, config, executor)
    return contours_from_field(band_field, plane, frequencies, markers)


# ---------------------------------------------------------------------------
# Bulk projection
# ---------------------------------------------------------------------------


def bulk_projection(
    lattice: LatticeGeometry,
    params: ArrayParams,
    k_par_points: np.ndarray,
    n_kx: int,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> BulkProjection:
    """Bulk band envelopes at each (0, k_y, k_z) scanned over k_x in [-pi, pi]."""
    k_par = np.atleast_2d(np.asarray(k_par_points, dtype=float)).copy()
    k_par[:, 0] = 0.0
    kx = np.linspace(-np.pi, np.pi, n_kx)
    points = k_par[:, None, :] + kx[None, :, None] * np.array([1.0, 0.0, 0.0])
    samples = frequency_grid(lattice, params, points, config, executor)
    return BulkProjection(
        k_par=k_par,
        band_min=samples.min(axis=1),
        band_max=samples.max(axis=1),
        samples=samples,
    )


# ---------------------------------------------------------------------------
# Nodal-line detection
# ---------------------------------------------------------------------------


def _pair_gap(
    lattice: LatticeGeometry,
    params: ArrayParams,
    config: EwaldConfig,
    band: int,
    plane: PlaneCut,
    t: float,
    s: float,
) -> tuple[float, float]:
    k = plane.to_k(np.array([s]), np.array([t]))[0]
    freqs = band_frequencies(lattice, params, k, config)
    return float(freqs[band + 1] - freqs[band]), float(0.5 * (freqs[band + 1] + freqs[band]))


def _order_ring(points: np.ndarray, plane: PlaneCut) -> ContourLine:
    u = np.pi * np.asarray(plane.u)
    v = np.pi * np.asarray(plane.v)
    s = points @ u / (u @ u)
    t = points @ v / (v @ v)
    angle = np.arctan2(t - t.mean(), s - s.mean())
    order = np.argsort(angle)
    gaps = np.diff(np.concatenate([angle[order], angle[order][:1] + 2.0 * np.pi]))
    return ContourLine(points=points[order], closed=bool(gaps.max() < np.pi / 2))


def nodal_line_scan(
    lattice: LatticeGeometry,
    params: ArrayParams,
    plane: PlaneCut,
    grid_n: int,
    gap_tol: float = GAP_TOLERANCE,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> NodalLineScan:
    """Degeneracy points of adjacent bands on a plane (detection only).

    Every grid row is searched for local minima of each adjacent-band gap;
    each minimum is refined along the row. A nodal line crosses rows
    transversally, so refined minima on it reach ``gap_tol``; isolated
    point nodes almost never sit on a row and are not reported.
    """
    config = config or EwaldConfig()
    s_axis, t_axis = plane.axes(grid_n)
    field = frequency_grid(lattice, params, plane.points(grid_n), config, executor)
    gaps = np.diff(field, axis=-1)

    best: Optional[NodalLineScan] = None
    for band in range(gaps.shape[-1]):
        found_k, found_w = [], []
        for j, t in enumerate(t_axis):
            row = gaps[:, j, band]
            for i in range(1, grid_n - 1):
                if not (row[i] <= row[i - 1] and row[i] <= row[i + 1]):
                    continue
                objective = partial(_pair_gap, lattice, params, config, band, plane, t)
                opt = minimize_scalar(
                    lambda s: objective(s)[0],
                    bounds=(s_axis[i - 1], s_axis[i + 1]),
                    method="bounded",
                    options={"xatol": 1e-10, "maxiter": 200},
                )
                gap, omega = objective(float(opt.x))
                if gap < gap_tol:
                    found_k.append(plane.to_k(np.array([opt.x]), np.array([t]))[0])
                    found_w.append(omega)
        if found_k and (best is None or len(found_k) > len(best.points)):
            points = np.array(found_k)
            best = NodalLineScan(
                plane=plane,
                band=band,
                points=points,
                frequencies=np.array(found_w),
                contour=EquifrequencyContour(
                    plane=plane,
                    frequency=float(np.mean(found_w)),
                    band=band,
                    lines=[_order_ring(points, plane)] if len(points) >= 3 else [],
                ),
            )

    if best is None:
        logger.info("No nodal line on plane origin=%s", plane.origin)
        return NodalLineScan(plane=plane, band=0, points=np.zeros((0, 3)), frequencies=np.zeros(0))
    logger.info(
        "Nodal line: %d points between bands %d/%d, mean omega %.3f",
        len(best.points),
        best.band,
        best.band + 1,
        best.mean_frequency,
    )
    return best
