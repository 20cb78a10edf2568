"""(100)-cut BCC slab: geometry, bands, localisation and Fermi arcs."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, replace
from functools import partial
from typing import Optional

import numpy as np

from weylarray.domain.errors import SlabWidthError
from weylarray.domain.models.analysis import ContourLine, EquifrequencyContour, PlaneCut
from weylarray.domain.models.bands import BandSolution
from weylarray.domain.models.enums import Facet
from weylarray.domain.models.lattice_sum import EwaldConfig
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.models.slab import PolarizationTexture, SlabModel
from weylarray.domain.ports.sweep_executor import InlineExecutor, SweepExecutorPort
from weylarray.domain.rules.constants import (
    DEFAULT_EDGE_FRACTION,
    DEFAULT_FACET_THRESHOLD,
    SLAB_LAYER_SPACING,
    SUBRADIANCE_CUTOFF,
)
from weylarray.domain.services.bloch import solve
from weylarray.domain.services.contours import (
    indices_to_k,
    nearest_nodes,
    trace_isolines,
    winding_shift,
)
from weylarray.domain.services.geometry import surface_lattice

logger = logging.getLogger(__name__)

_FACET_CODES: tuple[Facet, ...] = (Facet.FACET_1BAR00, Facet.BULK, Facet.FACET_100)


def surface_plane() -> PlaneCut:
    """The full surface zone k = (0, k_y, k_z), k_y, k_z in [-pi/a, pi/a]."""
    return PlaneCut(origin=(0.0, 0.0, 0.0), u=(0.0, 1.0, 0.0), v=(0.0, 0.0, 1.0))


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------


def build_slab(width: float) -> SlabModel:
    """Stack BCC (100) layers a/2 apart across a slab of width ``width`` (units of a).

    M_slab = 2 w/a - 1 sites, with w/a = 0.5 read as a single layer.
    Layers alternate between in-plane offsets (0, 0) and (a/2, a/2).
    """
    if width <= 0.0:
        raise SlabWidthError(f"Slab width must be > 0, got {width}")
    doubled = 2.0 * width
    if not np.isclose(doubled, round(doubled), atol=1e-9):
        raise SlabWidthError(f"Slab width w/a = {width} must be a multiple of 1/2")
    n_sites = max(int(round(doubled)) - 1, 1)

    layer = np.arange(n_sites)
    site_types = layer % 2
    offset = 0.5 * site_types
    sites = np.stack([SLAB_LAYER_SPACING * layer, offset, offset], axis=1)
    top = SLAB_LAYER_SPACING * (n_sites - 1)
    logger.debug("Slab w/a=%.1f: %d sites", width, n_sites)
    return SlabModel(
        width=float(width),
        geometry=surface_lattice(sites),
        site_types=site_types,
        facet_planes=(0.0, float(top)),
    )


# ---------------------------------------------------------------------------
# Bands
# ---------------------------------------------------------------------------


def _surface_k(k: np.ndarray) -> np.ndarray:
    k = np.asarray(k, dtype=float).reshape(-1)
    if k.size == 2:
        return np.array([0.0, k[0], k[1]])
    return np.array([0.0, k[1], k[2]])


def _slab_solution(
    slab: SlabModel, params: ArrayParams, config: EwaldConfig, k: np.ndarray
) -> BandSolution:
    return solve(slab.geometry, params, _surface_k(k), config)


def slab_bands(
    slab: SlabModel,
    params: ArrayParams,
    k_points: np.ndarray,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> list[BandSolution]:
    """One 3 M_slab-band solution per in-plane k (2-vectors or (0, k_y, k_z))."""
    executor = executor or InlineExecutor()
    work = partial(_slab_solution, slab, params, config or EwaldConfig())
    flat = np.asarray(k_points, dtype=float)
    flat = flat.reshape(-1, flat.shape[-1])
    return executor.map(work, list(flat))


# ---------------------------------------------------------------------------
# State analysis
# ---------------------------------------------------------------------------


def _amplitudes(state: np.ndarray) -> np.ndarray:
    """|c_{xi beta}|^2 reshaped to (M, 3)."""
    return (np.abs(np.asarray(state)) ** 2).reshape(-1, 3)


def localization_profile(state: np.ndarray, slab: Optional[SlabModel] = None) -> np.ndarray:
    """p_xi = sum_beta |c_{xi beta}|^2."""
    profile = _amplitudes(state).sum(axis=1)
    if slab is not None and profile.size != slab.n_sites:
        raise ValueError(f"State has {profile.size} sites, slab has {slab.n_sites}")
    return profile


def polarization_weight(state: np.ndarray) -> np.ndarray:
    """(W_x, W_y, W_z) with W_beta = sum_xi |c_{xi beta}|^2."""
    return _amplitudes(state).sum(axis=0)


def facet_classify(
    state: np.ndarray,
    slab: SlabModel,
    edge_fraction: float = DEFAULT_EDGE_FRACTION,
    threshold: float = DEFAULT_FACET_THRESHOLD,
) -> Facet:
    """Facet whose edge_fraction of nearest sites holds more than ``threshold`` weight."""
    profile = localization_profile(state, slab)
    n_edge = max(1, int(round(edge_fraction * slab.n_sites)))
    if profile[-n_edge:].sum() > threshold:
        return Facet.FACET_100
    if profile[:n_edge].sum() > threshold:
        return Facet.FACET_1BAR00
    return Facet.BULK


def polarization_texture(
    state: np.ndarray,
    slab: SlabModel,
    edge_fraction: float = DEFAULT_EDGE_FRACTION,
    threshold: float = DEFAULT_FACET_THRESHOLD,
) -> PolarizationTexture:
    return PolarizationTexture(
        weights=polarization_weight(state),
        facet=facet_classify(state, slab, edge_fraction, threshold),
        profile=localization_profile(state, slab),
    )


# ---------------------------------------------------------------------------
# Fermi arcs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _SurfaceSample:
    """Compact per-k summary kept for every surface-grid node."""

    frequencies: np.ndarray
    decay_rates: np.ndarray
    weights: np.ndarray  # (n_bands, 3)
    facets: np.ndarray  # (n_bands,) index into _FACET_CODES


def _surface_sample(
    slab: SlabModel,
    params: ArrayParams,
    config: EwaldConfig,
    edge_fraction: float,
    threshold: float,
    k: np.ndarray,
) -> _SurfaceSample:
    solution = solve(slab.geometry, params, _surface_k(k), config)
    weights = np.array([polarization_weight(solution.state(b)) for b in range(solution.n_bands)])
    facets = np.array(
        [
            _FACET_CODES.index(facet_classify(solution.state(b), slab, edge_fraction, threshold))
            for b in range(solution.n_bands)
        ]
    )
    return _SurfaceSample(
        frequencies=solution.frequencies,
        decay_rates=solution.decay_rates,
        weights=weights,
        facets=facets,
    )


def facet_runs(line: ContourLine, shift: np.ndarray) -> list[ContourLine]:
    """Split a line into maximal runs of vertices localised on one facet.

    A line on a single facet comes back whole. The pieces of a closed line
    start at a facet change; ``shift`` (1/a) is added to the vertices that
    wrap past the starting point. Runs of a single vertex are dropped, and
    a mask cut stays with the run that reaches it.
    """
    facets = line.facets or []
    if len(set(facets)) <= 1:
        return [line]
    n = len(line)
    order = np.arange(n)
    points = line.points
    if line.closed:
        first = next(i for i in range(n) if facets[i] != facets[i - 1])
        order = np.roll(order, -first)
        points = np.concatenate([line.points[first:], line.points[:first] + shift])
    labels = [facets[i] for i in order]
    bounds = [0, *(j for j in range(1, n) if labels[j] != labels[j - 1]), n]

    pieces = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi - lo < 2:
            continue
        idx = order[lo:hi]
        pieces.append(
            ContourLine(
                points=points[lo:hi],
                closed=False,
                weights=None if line.weights is None else line.weights[idx],
                facets=labels[lo:hi],
                cut_ends=(
                    not line.closed and lo == 0 and line.cut_ends[0],
                    not line.closed and hi == n and line.cut_ends[1],
                ),
            )
        )
    return pieces


def _marker_distance(
    line: ContourLine, markers: Optional[np.ndarray], cell: float
) -> Optional[tuple[float, float]]:
    """Distance of each open end to the nearest marker, in grid cells, modulo 2 pi / a."""
    if line.closed or markers is None or not len(markers):
        return None

    targets = markers[:, 1:]

    def nearest(point: np.ndarray) -> float:
        delta = targets - point[1:]
        delta -= 2.0 * np.pi * np.rint(delta / (2.0 * np.pi))
        return float(np.linalg.norm(delta, axis=1).min() / cell)

    return nearest(line.points[0]), nearest(line.points[-1])


def fermi_arcs(
    slab: SlabModel,
    params: ArrayParams,
    omega: float,
    grid_n: int,
    subradiance_cutoff: float = SUBRADIANCE_CUTOFF,
    edge_fraction: float = DEFAULT_EDGE_FRACTION,
    threshold: float = DEFAULT_FACET_THRESHOLD,
    weyl_projections: Optional[Sequence[Sequence[float]]] = None,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> list[EquifrequencyContour]:
    """Subradiant slab contours at ``omega`` with per-vertex facet and texture.

    Bands with gamma >= ``subradiance_cutoff`` (units of gamma_0) are masked
    out. Vertex metadata comes from the nearest grid eigenstate.
    ``weyl_projections`` (units of pi/a) are attached as markers.

    Isolines are joined across the edges of the surface zone, so a line
    that closes on the torus is closed. Lines are then split into facet
    runs: an open run ends where its states leave the facet, or at a
    mask cut (flagged in ``cut_ends``).
    """
    executor = executor or InlineExecutor()
    plane = surface_plane()
    points = plane.points(grid_n).reshape(-1, 3)
    work = partial(
        _surface_sample, slab, params, config or EwaldConfig(), edge_fraction, threshold
    )
    samples = executor.map(work, list(points))

    n_bands = slab.geometry.matrix_dimension
    freqs = np.array([s.frequencies for s in samples]).reshape(grid_n, grid_n, n_bands)
    gammas = np.array([s.decay_rates for s in samples]).reshape(grid_n, grid_n, n_bands)
    weights = np.array([s.weights for s in samples]).reshape(grid_n, grid_n, n_bands, 3)
    facets = np.array([s.facets for s in samples]).reshape(grid_n, grid_n, n_bands)

    markers = None
    if weyl_projections is not None and len(weyl_projections):
        markers = np.array([_surface_k(np.pi * np.asarray(p)) for p in weyl_projections])

    cell = 2.0 * np.pi / (grid_n - 1)
    contours = []
    for band in range(n_bands):
        mask = gammas[:, :, band] < subradiance_cutoff
        lines = []
        for traced in trace_isolines(freqs[:, :, band], omega, mask, periodic=True):
            nodes = nearest_nodes(traced.indices, grid_n, periodic=True)
            line = ContourLine(
                points=indices_to_k(traced.indices, plane, grid_n),
                closed=traced.closed,
                weights=weights[nodes[:, 0], nodes[:, 1], band],
                facets=[_FACET_CODES[c] for c in facets[nodes[:, 0], nodes[:, 1], band]],
                winding=traced.winding,
                cut_ends=traced.cut_ends,
            )
            for piece in facet_runs(line, winding_shift(plane, traced.winding)):
                distance = _marker_distance(piece, markers, cell)
                lines.append(replace(piece, marker_distance=distance))
        if lines:
            contours.append(
                EquifrequencyContour(
                    plane=plane, frequency=float(omega), band=band, lines=lines, markers=markers
                )
            )
    logger.info(
        "Fermi arcs at omega=%.4f: %d contour line(s) over %d band(s)",
        omega,
        sum(len(c.lines) for c in contours),
        len(contours),
    )
    return contours
