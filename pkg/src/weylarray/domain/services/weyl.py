"""Weyl-node search, chirality, isolation and node trajectories."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from functools import partial
from typing import Optional

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from weylarray.domain.errors import (
    InconclusiveChiralityError,
    SingularConfigurationError,
    WeylArrayError,
)
from weylarray.domain.models.analysis import DosHistogram
from weylarray.domain.models.enums import SearchMode
from weylarray.domain.models.lattice import LatticeGeometry
from weylarray.domain.models.lattice_sum import EwaldConfig
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.models.weyl import TrajectoryPoint, WeylNode, WeylSearchResult
from weylarray.domain.ports.sweep_executor import InlineExecutor, SweepExecutorPort
from weylarray.domain.rules.constants import (
    AXIS_SCAN_SAMPLES,
    CHIRALITY_TOLERANCE,
    DEFAULT_ISOLATION_THRESHOLD,
    DEFAULT_SPHERE_GRID,
    DEFAULT_SPHERE_RADIUS,
    DEFAULT_WINDOW,
    GAP_TOLERANCE,
    LINE_DEGENERACY_FRACTION,
    MAX_REFINEMENT_STEPS,
    MULTISTART_POINTS,
    RESONANCE_MARGIN,
    ZONE_FACE_TOLERANCE,
)
from weylarray.domain.services.bloch import band_frequencies, solve
from weylarray.domain.services.geometry import diffraction_resonant, in_light_cone
from weylarray.domain.services.spectra import frequency_grid, zone_grid

logger = logging.getLogger(__name__)


def _pair(
    lattice: LatticeGeometry, params: ArrayParams, config: EwaldConfig, band: int, k: np.ndarray
) -> tuple[float, float]:
    """(gap, mean frequency) of bands ``band`` and ``band + 1`` at k."""
    freqs = band_frequencies(lattice, params, k, config)
    return float(freqs[band + 1] - freqs[band]), float(0.5 * (freqs[band] + freqs[band + 1]))


def _axis_point(kz: float) -> np.ndarray:
    return np.array([0.0, 0.0, kz])


def _make_node(
    params: ArrayParams,
    k: np.ndarray,
    band: int,
    gap: float,
    omega: float,
) -> WeylNode:
    return WeylNode(
        k_position=tuple(float(x) for x in k / np.pi),  # type: ignore[arg-type]
        weyl_frequency=omega,
        band_index=band,
        residual_gap=max(gap, 0.0),
        in_light_cone=in_light_cone(k, params.k0a),
    )


# ---------------------------------------------------------------------------
# Node search
# ---------------------------------------------------------------------------


def _axis_frequencies(
    lattice: LatticeGeometry, params: ArrayParams, config: EwaldConfig, kz: float
) -> Optional[np.ndarray]:
    """Band frequencies at (0, 0, kz), or None on a diffraction resonance."""
    try:
        return band_frequencies(lattice, params, _axis_point(kz), config)
    except SingularConfigurationError:
        return None


def _axis_pair(
    lattice: LatticeGeometry, params: ArrayParams, config: EwaldConfig, band: int, kz: float
) -> tuple[float, float]:
    freqs = _axis_frequencies(lattice, params, config, kz)
    if freqs is None:
        return np.inf, np.nan
    return float(freqs[band + 1] - freqs[band]), float(0.5 * (freqs[band] + freqs[band + 1]))


def _axis_scan(
    lattice: LatticeGeometry,
    params: ArrayParams,
    config: EwaldConfig,
    executor: SweepExecutorPort,
    samples: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Samples of k_z on [0, pi] with resonant ones dropped, and the bands there."""
    kz = np.linspace(0.0, np.pi, samples + 1)
    points = np.stack([np.zeros_like(kz), np.zeros_like(kz), kz], axis=1)
    resonant = diffraction_resonant(
        lattice, points, params.k0a, RESONANCE_MARGIN * config.resonance_tolerance
    )
    if resonant.any():
        logger.debug("Skipping %d resonant k_z sample(s)", int(resonant.sum()))
    keep = ~resonant
    return kz[keep], frequency_grid(lattice, params, points[keep], config, executor)


def _line_degenerate(gaps: np.ndarray, gap_tol: float) -> set[int]:
    return {
        band
        for band in range(gaps.shape[1])
        if np.mean(gaps[:, band] < gap_tol) > LINE_DEGENERACY_FRACTION
    }


def _two_fold(freqs: np.ndarray, band: int, gap_tol: float) -> bool:
    """Neither neighbouring band joins the touching of ``band`` and ``band + 1``."""
    below = band == 0 or freqs[band] - freqs[band - 1] >= gap_tol
    above = band + 2 >= freqs.size or freqs[band + 2] - freqs[band + 1] >= gap_tol
    return bool(below and above)


def _four_fold(freqs: np.ndarray, band: int, gap_tol: float) -> bool:
    """Four consecutive bands, ``band`` and ``band + 1`` among them, meet."""
    starts = range(max(band - 2, 0), min(band, freqs.size - 4) + 1)
    return any(freqs[s + 3] - freqs[s] < gap_tol for s in starts)


def _interior_minima(column: np.ndarray, kz: np.ndarray, gap_tol: float) -> list[int]:
    """Isolated local minima strictly inside (0, pi), deepest first.

    Both neighbouring samples must be gapped, so a pair that is degenerate
    on a whole segment yields nothing there.
    """
    minima = []
    for i in range(1, kz.size):
        if not 0.0 < kz[i] < np.pi:
            continue
        left = column[i - 1]
        right = column[i + 1] if i + 1 < kz.size else np.inf
        if column[i] < left and column[i] <= right and min(left, right) >= gap_tol:
            minima.append(i)
    return sorted(minima, key=lambda i: column[i])


def _refine_on_axis(
    lattice: LatticeGeometry,
    params: ArrayParams,
    config: EwaldConfig,
    band: int,
    lo: float,
    hi: float,
) -> tuple[float, float, float]:
    objective = partial(_axis_pair, lattice, params, config, band)
    opt = minimize_scalar(
        lambda kz: objective(kz)[0],
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12, "maxiter": MAX_REFINEMENT_STEPS},
    )
    kz = float(opt.x)
    # the bounded search never lands exactly on an end point
    for edge in (lo, hi):
        if objective(edge)[0] < objective(kz)[0]:
            kz = edge
    gap, omega = objective(kz)
    return kz, gap, omega


def _pair_touching(
    lattice: LatticeGeometry,
    params: ArrayParams,
    config: EwaldConfig,
    gap_tol: float,
    kz: np.ndarray,
    column: np.ndarray,
    band: int,
    face_allowed: bool,
) -> tuple[Optional[tuple[float, float, float]], float]:
    """First touching of one pair on the axis, and the smallest interior gap refined.

    Interior touchings must be two-fold. The folded cubic zone makes every
    pair two-fold at Z, so a touching there counts only when four bands
    meet and ``face_allowed`` is set.
    """
    candidates = _interior_minima(column, kz, gap_tol)
    if kz[-1] == np.pi and column[-1] < column[-2]:
        candidates.append(kz.size - 1)
    smallest = np.inf
    for i in candidates:
        k_star, gap, omega = _refine_on_axis(
            lattice, params, config, band, float(kz[i - 1]), float(kz[min(i + 1, kz.size - 1)])
        )
        if k_star < ZONE_FACE_TOLERANCE:
            continue
        on_face = np.pi - k_star < ZONE_FACE_TOLERANCE
        if not on_face:
            smallest = min(smallest, gap)
        if gap >= gap_tol:
            continue
        freqs = _axis_frequencies(lattice, params, config, k_star)
        if freqs is None:
            continue
        if on_face:
            accepted = face_allowed and _four_fold(freqs, band, gap_tol)
            k_star = np.pi
        else:
            accepted = _two_fold(freqs, band, gap_tol)
        if accepted:
            return (k_star, gap, omega), smallest
        logger.debug("pair %d closes at k_z=%.6f pi/a without a node", band, k_star / np.pi)
    return None, smallest


def _axis_search(
    lattice: LatticeGeometry,
    params: ArrayParams,
    gap_tol: float,
    config: EwaldConfig,
    executor: SweepExecutorPort,
    samples: int,
) -> WeylSearchResult:
    kz, freqs = _axis_scan(lattice, params, config, executor, samples)
    gaps = np.diff(freqs, axis=1)
    inside = (kz > 0.0) & (kz < np.pi)
    degenerate = _line_degenerate(gaps[inside], gap_tol)
    pairs = [band for band in range(gaps.shape[1]) if band not in degenerate]
    if not pairs:
        return WeylSearchResult(message="all adjacent pairs are line-degenerate on the k_z axis")

    best: Optional[tuple[int, float, float, float]] = None
    min_gap = float(gaps[inside][:, pairs].min())
    for band in pairs:
        face_allowed = not {band - 1, band + 1} & degenerate
        touching, smallest = _pair_touching(
            lattice, params, config, gap_tol, kz, gaps[:, band], band, face_allowed
        )
        min_gap = min(min_gap, smallest)
        if touching is not None and (best is None or touching[1] < best[2]):
            best = (band, *touching)

    if best is None:
        deepest = min(pairs, key=lambda band: float(gaps[inside, band].min()))
        return WeylSearchResult(
            band_index=deepest,
            min_gap=min_gap,
            message=f"no two-fold gap closing below {gap_tol:.1e} on the k_z axis "
            f"(min {min_gap:.3e})",
        )

    band, k_star, gap, omega = best
    logger.debug("Axis node k_z=%.6f pi/a pair=%d gap=%.2e", k_star / np.pi, band, gap)
    signs = (1.0,) if k_star == np.pi else (1.0, -1.0)
    nodes = [_make_node(params, _axis_point(s * k_star), band, gap, omega) for s in signs]
    return WeylSearchResult(nodes=nodes, band_index=band, min_gap=min(min_gap, gap))


def _full_search(
    lattice: LatticeGeometry,
    params: ArrayParams,
    gap_tol: float,
    config: EwaldConfig,
    seed: int,
    starts: int,
) -> WeylSearchResult:
    rng = np.random.default_rng(seed)
    origins = rng.uniform(-np.pi, np.pi, size=(starts, 3))
    n_pairs = lattice.matrix_dimension - 1
    found: list[WeylNode] = []
    min_gap = np.inf
    for band in range(n_pairs):
        objective = partial(_pair, lattice, params, config, band)
        for origin in origins:
            opt = minimize(
                lambda k: objective(k)[0],
                origin,
                method="Nelder-Mead",
                options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 2000},
            )
            k = lattice.reduce_to_zone(opt.x)
            gap, omega = objective(k)
            min_gap = min(min_gap, gap)
            if gap >= gap_tol:
                continue
            if any(np.linalg.norm(n.k_vector - k) < 1e-3 for n in found):
                continue
            found.append(_make_node(params, k, band, gap, omega))
    found.sort(key=lambda n: (n.band_index, n.k_position))
    return WeylSearchResult(
        nodes=found,
        band_index=found[0].band_index if found else None,
        min_gap=float(min_gap),
        message="" if found else f"no gap below {gap_tol:.1e} from {starts} starts",
    )


def find_weyl_nodes(
    lattice: LatticeGeometry,
    params: ArrayParams,
    search: SearchMode = SearchMode.AXIS,
    gap_tol: float = GAP_TOLERANCE,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
    samples: int = AXIS_SCAN_SAMPLES,
    seed: int = 0,
    starts: int = MULTISTART_POINTS,
) -> WeylSearchResult:
    """Locate two-band touchings; a not-found result is not an error."""
    config = config or EwaldConfig()
    if search is SearchMode.AXIS:
        result = _axis_search(
            lattice, params, gap_tol, config, executor or InlineExecutor(), samples
        )
    else:
        result = _full_search(lattice, params, gap_tol, config, seed, starts)
    logger.info(
        "Weyl search (%s) a/lambda=%.3f muB=%.2f: %d node(s)",
        search.value,
        params.lattice_constant_ratio,
        params.zeeman_ratio,
        len(result.nodes),
    )
    return result


# ---------------------------------------------------------------------------
# Chirality
# ---------------------------------------------------------------------------


def _band_state(
    lattice: LatticeGeometry,
    params: ArrayParams,
    config: EwaldConfig,
    band: int,
    k: np.ndarray,
) -> np.ndarray:
    return solve(lattice, params, k, config).state(band)


def berry_flux(
    lattice: LatticeGeometry,
    params: ArrayParams,
    center: np.ndarray,
    band: int,
    sphere_radius: float = DEFAULT_SPHERE_RADIUS,
    grid_n: int = DEFAULT_SPHERE_GRID,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> float:
    """Outward Berry flux / 2 pi of ``band`` through a sphere around ``center``.

    ``center`` in 1/a, ``sphere_radius`` in pi/a. Latitude-longitude mesh
    with grid_n latitude steps and grid_n longitudes; both poles carry a
    single shared state.
    """
    executor = executor or InlineExecutor()
    config = config or EwaldConfig()
    radius = np.pi * sphere_radius
    theta = np.linspace(0.0, np.pi, grid_n + 1)
    phi = np.linspace(0.0, 2.0 * np.pi, grid_n, endpoint=False)

    points = [center + radius * np.array([0.0, 0.0, 1.0])]
    for t in theta[1:-1]:
        for p in phi:
            direction = np.array([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)])
            points.append(center + radius * direction)
    points.append(center - radius * np.array([0.0, 0.0, 1.0]))

    states = executor.map(partial(_band_state, lattice, params, config, band), points)
    north, south = states[0], states[-1]
    body = np.array(states[1:-1]).reshape(grid_n - 1, grid_n, -1)

    # mesh[i][j]: state at (theta_i, phi_j); poles repeat the shared state
    mesh = np.concatenate(
        [
            np.broadcast_to(north, (1, grid_n, north.size)),
            body,
            np.broadcast_to(south, (1, grid_n, south.size)),
        ]
    )

    def link(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("...i,...i->...", a.conj(), b)

    nxt = np.roll(mesh, -1, axis=1)
    u1 = link(mesh[:-1], mesh[1:])
    u2 = link(mesh[1:], nxt[1:])
    u3 = link(nxt[1:], nxt[:-1])
    u4 = link(nxt[:-1], mesh[:-1])
    flux = -np.sum(np.angle(u1 * u2 * u3 * u4))
    return float(flux / (2.0 * np.pi))


def chirality(
    lattice: LatticeGeometry,
    params: ArrayParams,
    node: WeylNode,
    sphere_radius: float = DEFAULT_SPHERE_RADIUS,
    grid_n: int = DEFAULT_SPHERE_GRID,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> int:
    """Quantised Berry flux of the lower crossing band around ``node``."""
    flux = berry_flux(
        lattice,
        params,
        node.k_vector,
        node.band_index,
        sphere_radius,
        grid_n,
        config,
        executor,
    )
    charge = int(round(flux))
    if abs(flux - charge) > CHIRALITY_TOLERANCE:
        raise InconclusiveChiralityError(
            f"Berry flux {flux:.3f} around k={node.k_position} is not quantised; "
            "change the sphere radius or grid",
            flux=flux,
        )
    logger.debug("Chirality %+d at k=%s (flux %.4f)", charge, node.k_position, flux)
    return charge


# ---------------------------------------------------------------------------
# Isolation
# ---------------------------------------------------------------------------


def isolation_check(
    lattice: LatticeGeometry,
    params: ArrayParams,
    node: WeylNode,
    window: float = DEFAULT_WINDOW,
    grid_n: int = 16,
    threshold: float = DEFAULT_ISOLATION_THRESHOLD,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
    dos: Optional[DosHistogram] = None,
) -> tuple[bool, float]:
    """(isolated, states per k-point in the closed window around omega_W).

    All states are counted, the Weyl cone's own included. ``dos`` can be
    passed to reuse a grid already computed for the same configuration.
    Grid points on a diffraction resonance are left out of the count.
    """
    if dos is None:
        config = config or EwaldConfig()
        points = zone_grid(lattice, grid_n)
        resonant = diffraction_resonant(
            lattice, points, params.k0a, RESONANCE_MARGIN * config.resonance_tolerance
        )
        points = points[~resonant]
        freqs = frequency_grid(lattice, params, points, config, executor)
        count = float(
            np.count_nonzero(
                (freqs >= node.weyl_frequency - 0.5 * window)
                & (freqs <= node.weyl_frequency + 0.5 * window)
            )
            / points.shape[0]
        )
    else:
        count = dos.window_count(node.weyl_frequency, window)
    isolated = count <= threshold * lattice.matrix_dimension
    return isolated, count


# ---------------------------------------------------------------------------
# Node trajectory
# ---------------------------------------------------------------------------


def _trajectory_point(
    lattice: LatticeGeometry,
    a_over_lambda: float,
    gap_tol: float,
    config: EwaldConfig,
    samples: int,
    muB: float,
) -> TrajectoryPoint:
    params = ArrayParams(lattice_constant_ratio=a_over_lambda, zeeman_ratio=muB)
    try:
        result = find_weyl_nodes(
            lattice, params, SearchMode.AXIS, gap_tol, config, samples=samples
        )
    except WeylArrayError as exc:
        return TrajectoryPoint(muB=muB, error=str(exc))
    if not result.found:
        return TrajectoryPoint(muB=muB, error=result.message or "no node")
    node = max(result.nodes, key=lambda n: n.k_position[2])
    logger.info(
        "trajectory a/lambda=%.3f muB=%.2f |k_W|=%.4f omega_W=%.4f",
        a_over_lambda,
        muB,
        node.k_norm,
        node.weyl_frequency,
    )
    return TrajectoryPoint(
        muB=muB,
        k_W=node.k_norm,
        omega_W=node.weyl_frequency,
        in_light_cone=node.in_light_cone,
    )


def weyl_trajectory(
    lattice: LatticeGeometry,
    a_over_lambda: float,
    muB_values: Sequence[float],
    gap_tol: float = GAP_TOLERANCE,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
    samples: int = AXIS_SCAN_SAMPLES,
) -> list[TrajectoryPoint]:
    """Axis node position and frequency for each Zeeman splitting, in input order."""
    executor = executor or InlineExecutor()
    work = partial(
        _trajectory_point, lattice, a_over_lambda, gap_tol, config or EwaldConfig(), samples
    )
    return executor.map(work, [float(m) for m in muB_values])
