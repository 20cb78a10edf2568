"""Lattice value types: direct/reciprocal bases, sublattices and k-paths.

Coordinates are stored in units of ``a`` (direct space) and ``1/a``
(reciprocal space). Arrays are never mutated after construction.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from weylarray.domain.models.enums import LatticeKind


@dataclass(frozen=True, eq=False)
class LatticeGeometry:
    """A (possibly non-Bravais) lattice with 3D site offsets.

    ``direct_basis`` holds one lattice vector per row: three rows for bulk
    lattices, two in-plane rows for surface (2D-periodic) lattices.
    ``reciprocal_basis`` has the same number of rows and satisfies
    ``a_i . b_j = 2 pi delta_ij``.
    """

    kind: LatticeKind
    direct_basis: np.ndarray
    sublattice_displacements: np.ndarray
    reciprocal_basis: np.ndarray
    vertices: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def dimensionality(self) -> int:
        return int(self.direct_basis.shape[0])

    @property
    def n_sublattices(self) -> int:
        """M, the number of sites per unit cell."""
        return int(self.sublattice_displacements.shape[0])

    @property
    def matrix_dimension(self) -> int:
        """Dimension of the Bloch matrix, 3 M."""
        return 3 * self.n_sublattices

    @property
    def cell_measure(self) -> float:
        """Unit-cell volume (3D) or area (2D) in units of a^3 / a^2."""
        if self.dimensionality == 3:
            return float(abs(np.linalg.det(self.direct_basis)))
        a1, a2 = self.direct_basis
        return float(np.linalg.norm(np.cross(a1, a2)))

    @property
    def zone_measure(self) -> float:
        """Brillouin-zone volume (3D) or area (2D)."""
        return (2.0 * np.pi) ** self.dimensionality / self.cell_measure

    @property
    def periodic_axes(self) -> np.ndarray:
        """Cartesian axes spanned by the lattice (all three for bulk)."""
        return np.flatnonzero(np.any(np.abs(self.direct_basis) > 1e-12, axis=0))

    @property
    def lattice_id(self) -> str:
        """Stable content hash used as a memoisation key."""
        digest = hashlib.sha1()
        digest.update(self.kind.value.encode())
        for arr in (self.direct_basis, self.sublattice_displacements):
            digest.update(np.ascontiguousarray(arr, dtype=float).tobytes())
        return digest.hexdigest()[:16]

    def reduced_coordinates(self, points: np.ndarray) -> np.ndarray:
        """Express Cartesian points in the direct basis (periodic axes only)."""
        basis = self.direct_basis[:, self.periodic_axes]
        pts = np.atleast_2d(points)[:, self.periodic_axes]
        return np.linalg.solve(basis.T, pts.T).T

    def reduce_to_zone(self, k: np.ndarray) -> np.ndarray:
        """Map k into the parallelepiped zone centred at Gamma by a reciprocal translation."""
        k = np.asarray(k, dtype=float)
        axes = self.periodic_axes
        basis = self.reciprocal_basis[:, axes]
        coeffs = np.linalg.solve(basis.T, k[axes])
        shift = np.round(coeffs)
        # the zone boundary (coefficient exactly +1/2) is kept as given
        shift[np.isclose(np.abs(coeffs), 0.5, atol=1e-12)] = 0.0
        reduced = k.copy()
        reduced[axes] = k[axes] - shift @ basis
        return reduced


@dataclass(frozen=True, eq=False)
class KPath:
    """A sampled polyline through labelled Brillouin-zone vertices."""

    labels: list[str]
    vertex_coordinates: np.ndarray  # one row per label, units of 1/a
    samples_per_segment: int
    points: np.ndarray  # (N, 3), units of 1/a
    arc_length: np.ndarray  # (N,), cumulative, units of 1/a
    vertex_arc_length: np.ndarray  # arc-length position of every label

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def vertex_coordinates_pi(self) -> np.ndarray:
        """Vertex coordinates in units of pi/a."""
        return self.vertex_coordinates / np.pi
