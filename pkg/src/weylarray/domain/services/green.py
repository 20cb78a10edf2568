"""Free-space dyadic Green's function and the Zeeman block.

The dyadic is

    G(r) = e^{i k0 r} / (4 pi r) [ (1 + i/(k0 r) - 1/(k0 r)^2) I
                                 + (-1 - 3i/(k0 r) + 3/(k0 r)^2) r^ r^ ]

with all near-, mid- and far-field terms kept. The contact term at r = 0
is never represented: callers exclude the self-interaction.
"""

from __future__ import annotations

import numpy as np

from weylarray.domain.errors import GreenDomainError

_ZEEMAN_GENERATOR = np.array(
    [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]], dtype=complex
)


def green_dyadic(displacement: np.ndarray, k0a: float | complex) -> np.ndarray:
    """3x3 dyadic Green's function at ``displacement`` (units of a).

    ``k0a`` may be complex; only the direct-sum oracle uses that.
    Raises GreenDomainError for a zero displacement.
    """
    r_vec = np.asarray(displacement, dtype=float)
    r = float(np.linalg.norm(r_vec))
    if r == 0.0:
        raise GreenDomainError("Green's function is not defined at zero displacement")
    r_hat = r_vec / r
    x = k0a * r
    scalar = np.exp(1j * x) / (4.0 * np.pi * r)
    transverse = 1.0 + 1j / x - 1.0 / x**2
    longitudinal = -1.0 - 3j / x + 3.0 / x**2
    return scalar * (transverse * np.eye(3) + longitudinal * np.outer(r_hat, r_hat))


def green_dyadic_batch(displacements: np.ndarray, k0a: float | complex) -> np.ndarray:
    """Vectorised ``green_dyadic`` over an (N, 3) array; returns (N, 3, 3).

    Rows with zero length raise GreenDomainError.
    """
    r_vec = np.atleast_2d(np.asarray(displacements, dtype=float))
    r = np.linalg.norm(r_vec, axis=1)
    if np.any(r == 0.0):
        raise GreenDomainError("Green's function is not defined at zero displacement")
    r_hat = r_vec / r[:, None]
    x = k0a * r
    scalar = np.exp(1j * x) / (4.0 * np.pi * r)
    transverse = scalar * (1.0 + 1j / x - 1.0 / x**2)
    longitudinal = scalar * (-1.0 - 3j / x + 3.0 / x**2)
    outer = r_hat[:, :, None] * r_hat[:, None, :]
    return transverse[:, None, None] * np.eye(3) + longitudinal[:, None, None] * outer


def zeeman_block(muB: float) -> np.ndarray:
    """i muB [[0, -1, 0], [1, 0, 0], [0, 0, 0]] in the Cartesian basis.

    Eigenvalues are (-muB, 0, +muB) for (sigma_-, pi, sigma_+).
    """
    return 1j * muB * _ZEEMAN_GENERATOR
