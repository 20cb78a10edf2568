"""Bloch-matrix assembly and diagonalisation.

Blocks (units of gamma_tilde_0, offset by omega_0):

    h_xi,xi  = -i gamma_0/2 I + h_Zeeman + C S(k, 0)
    h_xi,xi' = C e^{-i k.(d_xi - d_xi')} S(k, d_xi - d_xi')

with C = -3 pi gamma_0 / k0 and S the Ewald lattice sum.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from weylarray.domain.errors import EigensolverError
from weylarray.domain.models.bands import BandSolution, BlochMatrix
from weylarray.domain.models.lattice import LatticeGeometry
from weylarray.domain.models.lattice_sum import EwaldConfig, GreenLatticeSum
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.rules.constants import DEGENERACY_TOLERANCE
from weylarray.domain.services.ewald import lattice_sum_2d, lattice_sum_3d
from weylarray.domain.services.green import zeeman_block

logger = logging.getLogger(__name__)


def _lattice_sum(
    lattice: LatticeGeometry,
    offset: np.ndarray,
    k: np.ndarray,
    k0a: float,
    config: EwaldConfig,
) -> GreenLatticeSum:
    if lattice.dimensionality == 3:
        return lattice_sum_3d(lattice, offset, k, k0a, config)
    return lattice_sum_2d(lattice, offset, k, k0a, config)


def assemble_bloch(
    lattice: LatticeGeometry,
    params: ArrayParams,
    k: np.ndarray,
    config: Optional[EwaldConfig] = None,
) -> BlochMatrix:
    """Build H_eff(k) for ``lattice`` at quasimomentum k (units of 1/a)."""
    config = config or EwaldConfig()
    k = np.asarray(k, dtype=float).reshape(3)
    sites = lattice.sublattice_displacements
    n_sites = lattice.n_sublattices
    coupling = params.coupling_prefactor
    on_site = (
        -0.5j * params.gamma0_in_collective_units * np.eye(3)
        + zeeman_block(params.zeeman_ratio)
    )

    matrix = np.zeros((3 * n_sites, 3 * n_sites), dtype=complex)
    sums: dict[tuple[float, float, float], GreenLatticeSum] = {}
    for xi in range(n_sites):
        for xj in range(n_sites):
            delta = sites[xi] - sites[xj]
            key = (round(delta[0], 12), round(delta[1], 12), round(delta[2], 12))
            if key not in sums:
                sums[key] = _lattice_sum(lattice, delta, k, params.k0a, config)
            block = coupling * np.exp(-1j * (k @ delta)) * sums[key].value
            if xi == xj:
                block = block + on_site
            matrix[3 * xi : 3 * xi + 3, 3 * xj : 3 * xj + 3] = block

    return BlochMatrix(
        matrix=matrix,
        quasimomentum=k,
        params=params,
        lattice=lattice,
        reports=[s.report for s in sums.values() if s.report is not None],
    )


def _tie_break_order(eigenvalues: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Ascending Re(E); clusters within DEGENERACY_TOLERANCE ordered by |c|.

    Inside a cluster: descending |c_{xi_1 x}|, then lexicographic on the
    remaining amplitudes.
    """
    order = list(np.argsort(eigenvalues.real, kind="stable"))
    result: list[int] = []
    start = 0
    while start < len(order):
        stop = start + 1
        while (
            stop < len(order)
            and eigenvalues[order[stop]].real - eigenvalues[order[stop - 1]].real
            < DEGENERACY_TOLERANCE
        ):
            stop += 1
        cluster = order[start:stop]
        if len(cluster) > 1:
            cluster.sort(
                key=lambda j: (
                    -round(float(abs(vectors[0, j])), 12),
                    tuple(np.round(np.abs(vectors[1:, j]), 12)),
                )
            )
        result.extend(cluster)
        start = stop
    return np.array(result, dtype=int)


def diagonalize(bloch: BlochMatrix) -> BandSolution:
    """Full complex eigendecomposition sorted by frequency."""
    matrix = bloch.matrix
    if not np.all(np.isfinite(matrix)):
        raise EigensolverError("Bloch matrix has non-finite entries", condition=float("inf"))
    try:
        eigenvalues, vectors = np.linalg.eig(matrix)
    except np.linalg.LinAlgError as exc:
        condition = float(np.linalg.cond(matrix))
        raise EigensolverError(f"Eigendecomposition failed: {exc}", condition=condition) from exc

    vectors = vectors / np.linalg.norm(vectors, axis=0)
    order = _tie_break_order(eigenvalues, vectors)
    eigenvalues, vectors = eigenvalues[order], vectors[:, order]
    gamma0 = bloch.params.gamma0_in_collective_units
    return BandSolution(
        quasimomentum=bloch.quasimomentum,
        eigenvalues=eigenvalues,
        frequencies=eigenvalues.real.copy(),
        decay_rates=-2.0 * eigenvalues.imag / gamma0,
        coefficients=vectors,
    )


def solve(
    lattice: LatticeGeometry,
    params: ArrayParams,
    k: np.ndarray,
    config: Optional[EwaldConfig] = None,
) -> BandSolution:
    """assemble_bloch followed by diagonalize."""
    return diagonalize(assemble_bloch(lattice, params, k, config))


def band_frequencies(
    lattice: LatticeGeometry,
    params: ArrayParams,
    k: np.ndarray,
    config: Optional[EwaldConfig] = None,
) -> np.ndarray:
    """Sorted Re(E) only; cheaper than ``solve`` when states are not needed."""
    matrix = assemble_bloch(lattice, params, k, config).matrix
    return np.sort(np.linalg.eigvals(matrix).real)
