"""Marching-squares isolines on a sampled plane cut."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from skimage import measure

from weylarray.domain.models.analysis import ContourLine, PlaneCut

_EDGE_TOLERANCE = 1e-6  # grid index units


@dataclass(frozen=True, eq=False)
class TracedLine:
    """One isoline in fractional (row, col) grid indices.

    Periodic tracing unwraps the indices: a line leaving through one zone
    edge continues past the opposite one, and ``winding`` counts how many
    periods a closed line advances per turn. ``cut_ends`` flags the start
    and end of an open line that stop against a masked cell.
    """

    indices: np.ndarray
    closed: bool
    winding: tuple[int, int] = (0, 0)
    cut_ends: tuple[bool, bool] = (False, False)

    def __len__(self) -> int:
        return int(self.indices.shape[0])


def _edge_shift(point: np.ndarray, periods: tuple[int, int]) -> Optional[np.ndarray]:
    """Translation onto the periodic image of a point lying on a zone edge."""
    shift = np.zeros(2)
    for axis, period in enumerate(periods):
        if abs(point[axis]) < _EDGE_TOLERANCE:
            shift[axis] = period
        elif abs(point[axis] - period) < _EDGE_TOLERANCE:
            shift[axis] = -period
    return shift if shift.any() else None


def _winding(chain: np.ndarray, periods: tuple[int, int]) -> Optional[tuple[int, int]]:
    """Periods between the chain's ends when they are the same point of the torus."""
    if len(chain) < 3:
        return None
    step = np.asarray(periods, dtype=float)
    delta = chain[-1] - chain[0]
    whole = np.rint(delta / step)
    if np.abs(delta - whole * step).max() > _EDGE_TOLERANCE:
        return None
    return int(whole[0]), int(whole[1])


def _extend(
    chain: np.ndarray, remaining: list[np.ndarray], periods: tuple[int, int]
) -> tuple[np.ndarray, Optional[tuple[int, int]]]:
    """Append partner paths across zone edges until the chain closes or stops."""
    offset = np.zeros(2)  # unwrapped minus raw index of the current last piece
    while True:
        winding = _winding(chain, periods)
        if winding is not None:
            return chain, winding
        raw_end = chain[-1] - offset
        shift = _edge_shift(raw_end, periods)
        if shift is None:
            return chain, None
        image = raw_end + shift
        for j, path in enumerate(remaining):
            if np.allclose(path[0], image, atol=_EDGE_TOLERANCE):
                partner = path
            elif np.allclose(path[-1], image, atol=_EDGE_TOLERANCE):
                partner = path[::-1]
            else:
                continue
            del remaining[j]
            offset = offset - shift
            chain = np.concatenate([chain, partner[1:] + offset])
            break
        else:
            return chain, None


def _join_across_edges(
    paths: list[np.ndarray], periods: tuple[int, int]
) -> list[tuple[np.ndarray, bool, tuple[int, int]]]:
    remaining = list(paths)
    joined = []
    while remaining:
        chain, winding = _extend(remaining.pop(0), remaining, periods)
        if winding is None:
            # the reversed chain ends in the first piece, whose offset is zero
            chain, winding = _extend(chain[::-1], remaining, periods)
            chain = chain[::-1]
        if winding is None:
            joined.append((chain, False, (0, 0)))
        else:
            joined.append((chain[:-1], True, winding))
    return joined


def _touches_mask(point: np.ndarray, mask: np.ndarray, periodic: bool) -> bool:
    """True if a masked grid node lies within one cell of ``point``."""
    rows = np.arange(int(np.floor(point[0])) - 1, int(np.floor(point[0])) + 3)
    cols = np.arange(int(np.floor(point[1])) - 1, int(np.floor(point[1])) + 3)
    if periodic:
        rows, cols = np.mod(rows, mask.shape[0] - 1), np.mod(cols, mask.shape[1] - 1)
    else:
        rows = rows[(rows >= 0) & (rows < mask.shape[0])]
        cols = cols[(cols >= 0) & (cols < mask.shape[1])]
    return not bool(mask[np.ix_(rows, cols)].all())


def trace_isolines(
    field: np.ndarray,
    level: float,
    mask: Optional[np.ndarray] = None,
    periodic: bool = False,
) -> list[TracedLine]:
    """Level-``level`` isolines of a 2D field.

    Linear interpolation along cell edges. Cells touching a False entry of
    ``mask`` are skipped. With ``periodic`` the first and last rows (and
    columns) are the same zone edge: lines are joined across it and a
    line that comes back to its start on the torus is closed.
    """
    values = field if mask is None else field[mask]
    if values.size == 0 or values.min() > level or values.max() < level:
        return []
    closed_paths, open_paths = [], []
    for path in measure.find_contours(field, level, mask=mask):
        if len(path) > 2 and bool(np.allclose(path[0], path[-1])):
            closed_paths.append(path[:-1])
        elif len(path) >= 2:
            open_paths.append(path)

    periods = (field.shape[0] - 1, field.shape[1] - 1)
    traced = [(path, True, (0, 0)) for path in closed_paths]
    if periodic:
        traced += _join_across_edges(open_paths, periods)
    else:
        traced += [(path, False, (0, 0)) for path in open_paths]

    lines = []
    for indices, closed, winding in traced:
        cut = (False, False)
        if mask is not None and not closed:
            cut = (
                _touches_mask(indices[0], mask, periodic),
                _touches_mask(indices[-1], mask, periodic),
            )
        lines.append(TracedLine(indices, closed, winding, cut))
    return lines


def indices_to_k(indices: np.ndarray, plane: PlaneCut, grid_n: int) -> np.ndarray:
    """Map fractional (row, col) grid indices to k-points in 1/a."""
    (u0, u1), (v0, v1) = plane.u_range, plane.v_range
    s = u0 + indices[:, 0] * (u1 - u0) / (grid_n - 1)
    t = v0 + indices[:, 1] * (v1 - v0) / (grid_n - 1)
    return plane.to_k(s, t)


def winding_shift(plane: PlaneCut, winding: tuple[int, int]) -> np.ndarray:
    """k-space displacement (1/a) of a closed line after one turn."""
    (u0, u1), (v0, v1) = plane.u_range, plane.v_range
    u, v = np.asarray(plane.u, dtype=float), np.asarray(plane.v, dtype=float)
    return np.pi * (winding[0] * (u1 - u0) * u + winding[1] * (v1 - v0) * v)


def nearest_nodes(indices: np.ndarray, grid_n: int, periodic: bool = False) -> np.ndarray:
    """Closest grid node (row, col) for every fractional index."""
    nodes = np.rint(indices).astype(int)
    if periodic:
        return np.mod(nodes, grid_n - 1)
    return np.clip(nodes, 0, grid_n - 1)


def isolines_on_plane(
    field: np.ndarray, level: float, plane: PlaneCut, grid_n: int
) -> list[ContourLine]:
    return [
        ContourLine(points=indices_to_k(line.indices, plane, grid_n), closed=line.closed)
        for line in trace_isolines(field, level)
    ]
