"""Bloch matrices and their eigendecompositions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from weylarray.domain.models.lattice import LatticeGeometry
from weylarray.domain.models.lattice_sum import ConvergenceReport
from weylarray.domain.models.params import ArrayParams


@dataclass(frozen=True, eq=False)
class BlochMatrix:
    """H_eff(k) in units of gamma_tilde_0, offset by omega_0.

    Row/column ordering is (xi_1 x, xi_1 y, xi_1 z, ..., xi_M x, xi_M y, xi_M z).
    """

    matrix: np.ndarray
    quasimomentum: np.ndarray
    params: ArrayParams
    lattice: LatticeGeometry
    reports: list[ConvergenceReport] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    def block(self, xi: int, xi_prime: int) -> np.ndarray:
        """3x3 block coupling sublattices xi and xi_prime (0-based)."""
        return self.matrix[3 * xi : 3 * xi + 3, 3 * xi_prime : 3 * xi_prime + 3]


@dataclass(frozen=True, eq=False)
class BandSolution:
    """Eigenmodes of one Bloch matrix, sorted by ascending frequency.

    ``frequencies`` are (omega - omega_0) / gamma_tilde_0, ``decay_rates``
    are gamma / gamma_0 and ``coefficients[:, nu]`` is the unit-norm Bloch
    state c_{xi beta} of band nu.
    """

    quasimomentum: np.ndarray
    eigenvalues: np.ndarray
    frequencies: np.ndarray
    decay_rates: np.ndarray
    coefficients: np.ndarray

    @property
    def n_bands(self) -> int:
        return int(self.frequencies.shape[0])

    def state(self, band: int) -> np.ndarray:
        return self.coefficients[:, band]

    def reconstruct(self) -> np.ndarray:
        """P E P^-1, the matrix this solution diagonalises."""
        p = self.coefficients
        return p @ np.diag(self.eigenvalues) @ np.linalg.inv(p)
