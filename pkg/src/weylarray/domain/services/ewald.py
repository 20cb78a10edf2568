"""Ewald-accelerated lattice sums of the dyadic Green's function.

Both the 3D (bulk) and 2D (slab) sums evaluate

    S(k, Delta) = sum_R G(Delta - R) e^{i k.R}

as a spectral sum over reciprocal vectors g plus a real-space sum of
erfc-screened terms, with the regularised R = 0 contribution restored
analytically when Delta = 0. The dyadic operator (I + grad grad / k0^2)
is applied in closed form to every scalar term.

All routines accept a complex ``k0a``; the damped direct-sum oracle in
this module relies on that continuation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import erfc, erfcx

from weylarray.domain.errors import (
    ConvergenceError,
    GreenDomainError,
    SingularConfigurationError,
    TruncationError,
)
from weylarray.domain.models.lattice import LatticeGeometry
from weylarray.domain.models.lattice_sum import ConvergenceReport, EwaldConfig, GreenLatticeSum
from weylarray.domain.services.green import green_dyadic_batch

logger = logging.getLogger(__name__)

_SQRT_PI = math.sqrt(math.pi)
_EYE = np.eye(3)


# ---------------------------------------------------------------------------
# Shell bookkeeping
# ---------------------------------------------------------------------------


def _integer_shells(dimension: int, shells: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer points of [-N, N]^d and their Chebyshev shell index."""
    axis = np.arange(-shells, shells + 1)
    grids = np.meshgrid(*([axis] * dimension), indexing="ij")
    n = np.stack([g.ravel() for g in grids], axis=1)
    return n, np.max(np.abs(n), axis=1)


def _shell_totals(terms: np.ndarray, shell_index: np.ndarray, shells: int) -> np.ndarray:
    """Sum (N, 3, 3) terms per shell in a fixed order; returns (shells + 1, 3, 3)."""
    totals = np.zeros((shells + 1, 3, 3), dtype=complex)
    np.add.at(totals, shell_index, terms)
    return totals


def _norm(block: np.ndarray) -> float:
    return float(np.linalg.norm(block))


# ---------------------------------------------------------------------------
# Real-space part
# ---------------------------------------------------------------------------


def _screened_dyads(r_vecs: np.ndarray, k0: complex, splitting: float) -> np.ndarray:
    """Dyadic operator applied to the erfc-screened radial function.

    f(rho) = [A+ + A-] / (8 pi rho),  A+- = e^{+-i k0 rho} erfc(E rho +- i k0 / 2E)
    """
    rho = np.linalg.norm(r_vecs, axis=1)
    r_hat = r_vecs / rho[:, None]
    e = splitting
    beta = k0 / (2.0 * e)
    phi = np.exp(-(e * rho) ** 2 + beta**2)

    def screened(sign: float) -> np.ndarray:
        z = e * rho + sign * 1j * beta
        # e^{+-i k0 rho} e^{-z^2} = phi, so erfcx keeps large arguments finite
        scaled = erfcx(z) * phi
        direct = np.exp(sign * 1j * k0 * rho) * erfc(z)
        return np.where(z.real >= 0.0, scaled, direct)

    a_plus, a_minus = screened(1.0), screened(-1.0)
    big_f = a_plus + a_minus
    big_d = a_plus - a_minus
    big_f1 = 1j * k0 * big_d - (4.0 * e / _SQRT_PI) * phi
    big_f2 = -(k0**2) * big_f + (8.0 * e**3 * rho / _SQRT_PI) * phi

    den = 8.0 * np.pi * rho
    f = big_f / den
    f1 = big_f1 / den - big_f / (den * rho)
    f2 = big_f2 / den - 2.0 * big_f1 / (den * rho) + 2.0 * big_f / (den * rho**2)

    iso = f + f1 / (rho * k0**2)
    lon = (f2 - f1 / rho) / k0**2
    outer = r_hat[:, :, None] * r_hat[:, None, :]
    return iso[:, None, None] * _EYE + lon[:, None, None] * outer


@lru_cache(maxsize=512)
def _real_space_kernel(
    basis_key: tuple[float, ...],
    offset_key: tuple[float, float, float],
    k0: complex,
    splitting: float,
    shells: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """k-independent part of the real-space sum: (R, dyads, shell index).

    Cached per process; the returned arrays are read-only.
    """
    basis = np.asarray(basis_key, dtype=float).reshape(-1, 3)
    n, shell_index = _integer_shells(basis.shape[0], shells)
    lattice_points = n @ basis
    r_vecs = np.asarray(offset_key) - lattice_points
    keep = np.linalg.norm(r_vecs, axis=1) > 0.0
    lattice_points, r_vecs, shell_index = lattice_points[keep], r_vecs[keep], shell_index[keep]
    dyads = _screened_dyads(r_vecs, k0, splitting)
    for arr in (lattice_points, dyads, shell_index):
        arr.flags.writeable = False
    return lattice_points, dyads, shell_index


def _real_space_sum(
    lattice: LatticeGeometry,
    offset: np.ndarray,
    k: np.ndarray,
    k0: complex,
    splitting: float,
    shells: int,
) -> tuple[np.ndarray, int, float]:
    basis_key = tuple(float(x) for x in lattice.direct_basis.ravel())
    offset_key = (float(offset[0]), float(offset[1]), float(offset[2]))
    points, dyads, shell_index = _real_space_kernel(
        basis_key, offset_key, complex(k0), float(splitting), shells
    )
    phases = np.exp(1j * (points @ k))
    totals = _shell_totals(phases[:, None, None] * dyads, shell_index, shells)
    return totals.sum(axis=0), int(points.shape[0]), _norm(totals[-1])


def _self_term(k0: complex, splitting: float) -> np.ndarray:
    """Analytic correction restoring the excluded R = 0 term at Delta = 0.

    Its imaginary part is -k0 / (6 pi), the negative of Im G(r -> 0).
    """
    e = splitting
    beta = k0 / (2.0 * e)
    growth = np.exp(beta**2)
    i0 = 0.5j * k0 * _SQRT_PI * erfc(-1j * beta) + e * growth
    return (e**3 * growth / k0**2 - i0) / (3.0 * np.pi**1.5) * _EYE


# ---------------------------------------------------------------------------
# Spectral parts
# ---------------------------------------------------------------------------


def _spectral_sum_3d(
    lattice: LatticeGeometry,
    offset: np.ndarray,
    k: np.ndarray,
    k0: complex,
    splitting: float,
    shells: int,
    resonance_tolerance: float,
) -> tuple[np.ndarray, int, float]:
    n, shell_index = _integer_shells(3, shells)
    g_vecs = n @ lattice.reciprocal_basis
    q = k + g_vecs
    q2 = np.einsum("ij,ij->i", q, q)
    if np.isrealobj(k0) or complex(k0).imag == 0.0:
        mismatch = np.abs(np.sqrt(q2) - abs(k0))
        hit = int(np.argmin(mismatch))
        if mismatch[hit] < resonance_tolerance:
            raise SingularConfigurationError(
                f"Diffraction resonance |k + g| = k0 at g = {g_vecs[hit].round(12).tolist()}",
                tuple(float(x) for x in g_vecs[hit]),
            )
    denom = q2 - k0**2
    weight = np.exp(-denom / (4.0 * splitting**2)) / denom
    phase = np.exp(1j * (q @ offset))
    dyads = _EYE - q[:, :, None] * q[:, None, :] / k0**2
    terms = (weight * phase)[:, None, None] * dyads / lattice.cell_measure
    totals = _shell_totals(terms, shell_index, shells)
    return totals.sum(axis=0), int(q.shape[0]), _norm(totals[-1])


def _kappa(parallel_sq: np.ndarray, k0: complex) -> np.ndarray:
    """Out-of-plane decay constant, Re kappa >= 0 and -i sqrt(k0^2 - q^2) for open orders."""
    d = (parallel_sq - k0**2).astype(complex)
    kappa = np.sqrt(d)
    open_order = (d.imag == 0.0) & (d.real < 0.0)
    return np.where(open_order, -kappa, kappa)


def _spectral_sum_2d(
    lattice: LatticeGeometry,
    offset: np.ndarray,
    k: np.ndarray,
    k0: complex,
    splitting: float,
    shells: int,
    resonance_tolerance: float,
) -> tuple[np.ndarray, int, float]:
    in_plane = lattice.periodic_axes
    normal = int(np.setdiff1d(np.arange(3), in_plane)[0])
    e = splitting

    n, shell_index = _integer_shells(2, shells)
    g_vecs = n @ lattice.reciprocal_basis
    q = k + g_vecs
    q[:, normal] = 0.0
    q2 = np.einsum("ij,ij->i", q, q)
    kappa = _kappa(q2, k0)
    hit = int(np.argmin(np.abs(kappa)))
    if abs(kappa[hit]) < resonance_tolerance:
        raise SingularConfigurationError(
            f"Rayleigh-Wood anomaly |k + g| = k0 at g = {g_vecs[hit].round(12).tolist()}",
            tuple(float(x) for x in g_vecs[hit]),
        )

    x = float(offset[normal])
    c = kappa / (2.0 * e)
    psi = np.exp(-(c**2) - (e * x) ** 2)

    def branch(sign: float) -> np.ndarray:
        z = c + sign * e * x
        scaled = erfcx(z) * psi
        direct = np.exp(sign * kappa * x) * erfc(z)
        return np.where(z.real >= 0.0, scaled, direct)

    plus, minus = branch(1.0), branch(-1.0)
    even = plus + minus
    odd = plus - minus

    m = np.zeros((q.shape[0], 3, 3), dtype=complex)
    m[:, normal, normal] = kappa * even - (4.0 * e / _SQRT_PI) * psi
    for a in in_plane:
        m[:, normal, a] = 1j * q[:, a] * odd
        m[:, a, normal] = m[:, normal, a]
        for b in in_plane:
            m[:, a, b] = -q[:, a] * q[:, b] * even / kappa

    phase = np.exp(1j * (q @ offset))
    scalar = even / kappa
    terms = phase[:, None, None] * (scalar[:, None, None] * _EYE + m / k0**2)
    terms /= 4.0 * lattice.cell_measure
    totals = _shell_totals(terms, shell_index, shells)
    return totals.sum(axis=0), int(q.shape[0]), _norm(totals[-1])


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Splitting:
    value: float
    rescaled: bool


def _choose_splitting(k0: complex, config: EwaldConfig) -> _Splitting:
    e = config.splitting_parameter
    exponent = (complex(k0) / (2.0 * e)) ** 2
    if exponent.real <= config.max_exponent:
        return _Splitting(e, False)
    rescaled = abs(complex(k0)) / (2.0 * math.sqrt(config.max_exponent))
    logger.warning(
        "Splitting parameter %.4g gives (k0/2E)^2 = %.3g; rescaled to %.4g",
        e,
        exponent.real,
        rescaled,
    )
    return _Splitting(rescaled, True)


def _lattice_sum(
    lattice: LatticeGeometry,
    offset: np.ndarray,
    k: np.ndarray,
    k0a: complex,
    config: EwaldConfig,
    splitting: _Splitting,
) -> tuple[np.ndarray, ConvergenceReport]:
    spectral = _spectral_sum_3d if lattice.dimensionality == 3 else _spectral_sum_2d
    e = splitting.value
    recip, n_recip, recip_last = spectral(
        lattice, offset, k, k0a, e, config.reciprocal_shells, config.resonance_tolerance
    )
    real, n_real, real_last = _real_space_sum(
        lattice, offset, k, k0a, e, config.real_space_shells
    )
    value = recip + real
    if not np.any(offset):
        value = value + _self_term(k0a, e)

    scale = max(_norm(value), np.finfo(float).tiny)
    real_rel, recip_rel = real_last / scale, recip_last / scale
    if max(real_rel, recip_rel) > config.tolerance:
        raise ConvergenceError(
            f"Lattice sum not converged: last shell {max(real_rel, recip_rel):.3e} "
            f"> {config.tolerance:.1e}",
            spread=max(real_rel, recip_rel),
        )
    report = ConvergenceReport(
        splitting_parameter=e,
        real_terms=n_real,
        reciprocal_terms=n_recip,
        real_shells_used=config.real_space_shells,
        reciprocal_shells_used=config.reciprocal_shells,
        real_last_shell=real_rel,
        reciprocal_last_shell=recip_rel,
        rescaled=splitting.rescaled,
    )
    return value, report


def _prepare(
    lattice: LatticeGeometry, offset: np.ndarray, k: np.ndarray, config: EwaldConfig
) -> tuple[np.ndarray, np.ndarray]:
    offset = np.asarray(offset, dtype=float).reshape(3)
    k = np.asarray(k, dtype=float).reshape(-1)
    if k.size == 2:
        k = _embed(lattice, k)
    elif lattice.dimensionality == 2:
        k = _embed(lattice, k[lattice.periodic_axes])
    if not np.any(offset) and not config.self_term_excluded:
        raise GreenDomainError("The R = 0 term at zero offset is singular and must be excluded")
    return offset, lattice.reduce_to_zone(k)


def _embed(lattice: LatticeGeometry, k_par: np.ndarray) -> np.ndarray:
    """Place an in-plane 2-vector on the lattice's periodic axes."""
    k = np.zeros(3)
    k[lattice.periodic_axes] = np.asarray(k_par, dtype=float)
    return k


def _evaluate(
    lattice: LatticeGeometry,
    offset: np.ndarray,
    k: np.ndarray,
    k0a: complex,
    config: EwaldConfig,
) -> GreenLatticeSum:
    offset, k = _prepare(lattice, offset, k, config)
    splitting = _choose_splitting(k0a, config)
    value, report = _lattice_sum(lattice, offset, k, k0a, config, splitting)
    if config.verify_splitting:
        doubled = _Splitting(2.0 * splitting.value, splitting.rescaled)
        check, _ = _lattice_sum(lattice, offset, k, k0a, config, doubled)
        spread = _norm(check - value) / max(_norm(value), np.finfo(float).tiny)
        report = report.model_copy(update={"splitting_spread": spread})
        logger.debug("Splitting spread %.3e at k=%s offset=%s", spread, k, offset)
    return GreenLatticeSum(
        value=value,
        quasimomentum=k,
        offset=offset,
        periodic_dimension=lattice.dimensionality,
        report=report,
    )


def lattice_sum_3d(
    lattice: LatticeGeometry,
    offset: np.ndarray,
    k: np.ndarray,
    k0a: complex,
    config: Optional[EwaldConfig] = None,
) -> GreenLatticeSum:
    """Bulk sum over a 3D-periodic lattice; k is reduced to the first zone."""
    if lattice.dimensionality != 3:
        raise ValueError("lattice_sum_3d needs a 3D-periodic lattice")
    return _evaluate(lattice, offset, k, k0a, config or EwaldConfig())


def lattice_sum_2d(
    surface_lattice: LatticeGeometry,
    offset: np.ndarray,
    k_par: np.ndarray,
    k0a: complex,
    config: Optional[EwaldConfig] = None,
) -> GreenLatticeSum:
    """Sum over a 2D-periodic lattice; ``offset`` may leave the lattice plane.

    ``k_par`` is either the in-plane 2-vector or a 3-vector whose
    out-of-plane component is ignored.
    """
    if surface_lattice.dimensionality != 2:
        raise ValueError("lattice_sum_2d needs a 2D-periodic lattice")
    return _evaluate(surface_lattice, offset, k_par, k0a, config or EwaldConfig())


# ---------------------------------------------------------------------------
# Direct-sum oracle
# ---------------------------------------------------------------------------


def direct_sum_oracle(
    lattice: LatticeGeometry,
    offset: np.ndarray,
    k: np.ndarray,
    k0a: float,
    damping: float,
    max_radius: float,
    tolerance: float = 1e-8,
) -> GreenLatticeSum:
    """Brute-force sum at the damped momentum k0 (1 + i eta) up to ``max_radius``.

    Terms are grouped in unit-width radial shells; a last shell larger than
    ``tolerance`` relative to the total raises TruncationError.
    """
    if damping <= 0.0:
        raise ValueError("damping must be > 0")
    offset = np.asarray(offset, dtype=float).reshape(3)
    k = np.asarray(k, dtype=float)
    if np.size(k) == 2:
        k = _embed(lattice, k)
    k0 = k0a * (1.0 + 1j * damping)

    basis = lattice.direct_basis
    step = float(np.min(np.linalg.norm(basis, axis=1)))
    reach = int(math.ceil((max_radius + np.linalg.norm(offset)) / step)) + 1
    n, _ = _integer_shells(lattice.dimensionality, reach)
    points = n @ basis
    r_vecs = offset - points
    dist = np.linalg.norm(r_vecs, axis=1)
    keep = (dist > 0.0) & (dist <= max_radius)
    points, r_vecs, dist = points[keep], r_vecs[keep], dist[keep]

    order = np.lexsort((r_vecs[:, 2], r_vecs[:, 1], r_vecs[:, 0], dist))
    points, r_vecs, dist = points[order], r_vecs[order], dist[order]
    shell_index = np.floor(dist).astype(int)
    n_shells = int(shell_index.max()) + 1

    terms = green_dyadic_batch(r_vecs, k0) * np.exp(1j * (points @ k))[:, None, None]
    totals = _shell_totals(terms, shell_index, n_shells - 1)
    value = totals.sum(axis=0)
    last = _norm(totals[-1]) / max(_norm(value), np.finfo(float).tiny)
    if last > tolerance:
        raise TruncationError(
            f"Direct sum truncated at r = {max_radius} with damping {damping}: "
            f"last shell {last:.3e} > {tolerance:.1e}",
            last_shell=last,
        )
    report = ConvergenceReport(
        splitting_parameter=0.0,
        real_terms=int(points.shape[0]),
        reciprocal_terms=0,
        real_shells_used=n_shells,
        reciprocal_shells_used=0,
        real_last_shell=last,
        reciprocal_last_shell=0.0,
    )
    return GreenLatticeSum(
        value=value,
        quasimomentum=k,
        offset=offset,
        periodic_dimension=lattice.dimensionality,
        report=report,
    )


def richardson_extrapolate(dampings: list[float], values: list[np.ndarray]) -> np.ndarray:
    """Polynomial extrapolation of damped sums to zero damping (Neville scheme)."""
    if len(dampings) != len(values) or not dampings:
        raise ValueError("need one value per damping")
    x = np.asarray(dampings, dtype=float)
    table = [np.asarray(v, dtype=complex) for v in values]
    for level in range(1, len(x)):
        table = [
            (x[i + level] * table[i] - x[i] * table[i + 1]) / (x[i + level] - x[i])
            for i in range(len(table) - 1)
        ]
    return table[0]
