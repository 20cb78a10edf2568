"""Cubic lattices, high-symmetry paths and the light-cone classifier."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from weylarray.domain.errors import UnknownLabelError
from weylarray.domain.models.enums import LatticeKind
from weylarray.domain.models.lattice import KPath, LatticeGeometry
from weylarray.domain.rules.constants import (
    CUBIC_VERTICES,
    GAMMA_ALIASES,
    SURFACE_VERTICES,
    VertexSpec,
)


def reciprocal_basis(direct_basis: np.ndarray) -> np.ndarray:
    """Rows b_j with a_i . b_j = 2 pi delta_ij (works for two or three rows)."""
    a = np.asarray(direct_basis, dtype=float)
    # pseudo-inverse handles the 2-row surface case on its own plane
    return 2.0 * np.pi * np.linalg.pinv(a).T


def _vertex_table(specs: Sequence[VertexSpec]) -> dict[str, np.ndarray]:
    return {spec.label: spec.as_vector() for spec in specs}


def bcc_lattice() -> LatticeGeometry:
    """BCC as two simple-cubic sublattices offset by a(1,1,1)/2."""
    basis = np.eye(3)
    return LatticeGeometry(
        kind=LatticeKind.BCC,
        direct_basis=basis,
        sublattice_displacements=np.array([[0.0, 0.0, 0.0], [0.5, 0.5, 0.5]]),
        reciprocal_basis=reciprocal_basis(basis),
        vertices=_vertex_table(CUBIC_VERTICES),
    )


def cub_lattice() -> LatticeGeometry:
    """Simple cubic, one site per cell."""
    basis = np.eye(3)
    return LatticeGeometry(
        kind=LatticeKind.CUB,
        direct_basis=basis,
        sublattice_displacements=np.zeros((1, 3)),
        reciprocal_basis=reciprocal_basis(basis),
        vertices=_vertex_table(CUBIC_VERTICES),
    )


def surface_lattice(sites: np.ndarray) -> LatticeGeometry:
    """Square (y, z) lattice of side a carrying arbitrary 3D site offsets."""
    basis = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    return LatticeGeometry(
        kind=LatticeKind.SLAB,
        direct_basis=basis,
        sublattice_displacements=np.asarray(sites, dtype=float),
        reciprocal_basis=reciprocal_basis(basis),
        vertices=_vertex_table(SURFACE_VERTICES),
    )


def lattice_for(kind: LatticeKind) -> LatticeGeometry:
    """Bulk lattice factory keyed by kind."""
    if kind is LatticeKind.BCC:
        return bcc_lattice()
    if kind is LatticeKind.CUB:
        return cub_lattice()
    raise ValueError(f"No bulk lattice for kind '{kind.value}'")


def _resolve_label(lattice: LatticeGeometry, label: str) -> np.ndarray:
    key = "G" if label in GAMMA_ALIASES else label
    if key not in lattice.vertices:
        raise UnknownLabelError(label, sorted(lattice.vertices))
    return lattice.vertices[key]


def high_symmetry_path(
    lattice: LatticeGeometry, labels: Sequence[str], samples: int
) -> KPath:
    """Sample a polyline through labelled vertices.

    ``samples`` counts points per segment including both ends; shared
    endpoints appear once and zero-length segments add nothing.
    """
    if not labels:
        raise ValueError("A path needs at least one label")
    if samples < 2:
        raise ValueError("samples per segment must be >= 2")

    vertices = np.array([_resolve_label(lattice, label) for label in labels])
    points = [vertices[0]]
    vertex_s = [0.0]
    arc = [0.0]
    for start, end in zip(vertices[:-1], vertices[1:]):
        length = float(np.linalg.norm(end - start))
        if length > 0.0:
            for t in np.linspace(0.0, 1.0, samples)[1:]:
                points.append(start + t * (end - start))
                arc.append(vertex_s[-1] + t * length)
        vertex_s.append(vertex_s[-1] + length)

    return KPath(
        labels=list(labels),
        vertex_coordinates=vertices,
        samples_per_segment=samples,
        points=np.array(points),
        arc_length=np.array(arc),
        vertex_arc_length=np.array(vertex_s),
    )


def in_light_cone(k: np.ndarray, k0a: float) -> bool:
    """True iff |k| < k0 (strict); k in 1/a, either 3D or in-plane 2D."""
    return bool(np.linalg.norm(np.asarray(k, dtype=float)) < k0a)


def diffraction_resonant(
    lattice: LatticeGeometry,
    points: np.ndarray,
    k0a: float,
    tolerance: float,
    shells: int = 2,
) -> np.ndarray:
    """Mask of k-points where |k + g| = k0 for some reciprocal vector g.

    ``points`` has shape (..., 3) in 1/a; the result has shape (...,).
    Lattice sums are singular at these points.
    """
    pts = np.asarray(points, dtype=float)
    span = np.arange(-shells, shells + 1)
    grids = np.meshgrid(*[span] * lattice.dimensionality, indexing="ij")
    n = np.stack(grids, axis=-1).reshape(-1, lattice.dimensionality)
    g_vecs = n @ lattice.reciprocal_basis
    q = pts[..., None, :] + g_vecs
    mismatch = np.abs(np.linalg.norm(q, axis=-1) - abs(k0a))
    return np.asarray(mismatch.min(axis=-1) < tolerance)
