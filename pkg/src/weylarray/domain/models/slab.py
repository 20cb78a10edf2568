"""Slab (2D-periodic, finite along x) models."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from weylarray.domain.models.enums import Facet
from weylarray.domain.models.lattice import LatticeGeometry


@dataclass(frozen=True, eq=False)
class SlabModel:
    """(100)-cut BCC slab with an extended unit cell along x.

    ``geometry.sublattice_displacements`` are the M_slab site positions,
    ordered by ascending x: index 0 sits next to the (-100) facet and the
    last index next to the (100) facet.
    """

    width: float
    geometry: LatticeGeometry
    site_types: np.ndarray  # 0 = corner layer, 1 = body-centre layer
    facet_planes: tuple[float, float]  # x of the (-100) and (100) terminations

    @property
    def sites(self) -> np.ndarray:
        return self.geometry.sublattice_displacements

    @property
    def n_sites(self) -> int:
        return self.geometry.n_sublattices

    def site_rows(self) -> list[tuple[int, float, float, float, int]]:
        """(xi, x, y, z, site_type) rows for the geometry dump, 1-based xi."""
        return [
            (i + 1, float(x), float(y), float(z), int(t))
            for i, ((x, y, z), t) in enumerate(zip(self.sites, self.site_types))
        ]


@dataclass(frozen=True, eq=False)
class PolarizationTexture:
    """Polarization weights, facet and sublattice profile of one slab state."""

    weights: np.ndarray  # (W_x, W_y, W_z)
    facet: Facet
    profile: np.ndarray  # sum_beta |c_{xi beta}|^2 per site

    @property
    def in_plane_weight(self) -> float:
        return float(self.weights[0] + self.weights[1])
