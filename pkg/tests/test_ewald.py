"""Tests for the Ewald lattice sums and the damped direct-sum oracle.

The oracle runs at a damped momentum k0 (1 + i eta); the Ewald sums accept
the same complex k0, so both are compared at equal arguments.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from weylarray.domain.errors import (
    ConvergenceError,
    GreenDomainError,
    SingularConfigurationError,
    TruncationError,
)
from weylarray.domain.models.lattice_sum import EwaldConfig
from weylarray.domain.services.ewald import (
    direct_sum_oracle,
    lattice_sum_2d,
    lattice_sum_3d,
    richardson_extrapolate,
)
from weylarray.domain.services.geometry import surface_lattice

K0A = 2.0 * np.pi * 0.1
BODY_CENTRE = np.array([0.5, 0.5, 0.5])
K_GENERIC = np.array([0.37, -0.81, 1.23])


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


@pytest.fixture
def layer():
    """Square (y, z) lattice with one in-plane site and one at x = a/2."""
    return surface_lattice(np.array([[0.0, 0.0, 0.0], [0.5, 0.5, 0.5]]))


# ---------------------------------------------------------------------------
# Splitting-parameter independence
# ---------------------------------------------------------------------------


class TestSplittingInvariance:
    """The total sum does not depend on E."""

    @pytest.mark.parametrize("offset", [np.zeros(3), BODY_CENTRE])
    @pytest.mark.parametrize("factor", [0.5, 2.0])
    def test_bulk(self, cub, offset, factor):
        reference = lattice_sum_3d(cub, offset, K_GENERIC, K0A).value
        config = EwaldConfig(splitting_parameter=factor * math.sqrt(math.pi))
        value = lattice_sum_3d(cub, offset, K_GENERIC, K0A, config).value
        assert _rel(value, reference) < 1e-8

    @pytest.mark.parametrize("offset", [np.zeros(3), BODY_CENTRE, np.array([2.0, 0.1, 0.3])])
    def test_surface(self, layer, offset):
        k_par = np.array([0.9, -0.4])
        reference = lattice_sum_2d(layer, offset, k_par, K0A).value
        config = EwaldConfig(splitting_parameter=2.0 * math.sqrt(math.pi))
        value = lattice_sum_2d(layer, offset, k_par, K0A, config).value
        assert _rel(value, reference) < 1e-8

    def test_verify_splitting_reports_spread(self, cub):
        config = EwaldConfig(verify_splitting=True)
        result = lattice_sum_3d(cub, BODY_CENTRE, K_GENERIC, K0A, config)
        assert result.report is not None
        assert result.report.splitting_spread is not None
        assert result.report.splitting_spread < 1e-8

    def test_rescaled_splitting_agrees(self, cub):
        reference = lattice_sum_3d(cub, BODY_CENTRE, K_GENERIC, K0A).value
        config = EwaldConfig(max_exponent=0.01)
        result = lattice_sum_3d(cub, BODY_CENTRE, K_GENERIC, K0A, config)
        assert result.report.rescaled
        assert _rel(result.value, reference) < 1e-8


# ---------------------------------------------------------------------------
# Symmetries
# ---------------------------------------------------------------------------


class TestSymmetries:
    def test_sum_is_symmetric(self, cub):
        value = lattice_sum_3d(cub, BODY_CENTRE, K_GENERIC, K0A).value
        np.testing.assert_allclose(value, value.T, atol=1e-12)

    def test_offset_reversal_equals_momentum_reversal(self, cub):
        forward = lattice_sum_3d(cub, -BODY_CENTRE, K_GENERIC, K0A).value
        backward = lattice_sum_3d(cub, BODY_CENTRE, -K_GENERIC, K0A).value
        np.testing.assert_allclose(forward, backward.T, atol=1e-10)

    def test_periodic_in_momentum(self, cub):
        shifted = K_GENERIC + np.array([0.0, 2.0 * np.pi, 0.0])
        a = lattice_sum_3d(cub, BODY_CENTRE, K_GENERIC, K0A).value
        b = lattice_sum_3d(cub, BODY_CENTRE, shifted, K0A).value
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_bulk_self_sum_has_radiative_cancellation(self, cub):
        # Im S(k, 0) = -k0 / (6 pi) I outside the light cone: it cancels
        # the single-atom decay in the Bloch matrix.
        value = lattice_sum_3d(cub, np.zeros(3), K_GENERIC, K0A).value
        np.testing.assert_allclose(value.imag, -K0A / (6.0 * np.pi) * np.eye(3), atol=1e-8)


# ---------------------------------------------------------------------------
# Failure modes
# ---------------------------------------------------------------------------


class TestFailureModes:
    def test_bulk_resonance(self, cub):
        with pytest.raises(SingularConfigurationError) as excinfo:
            lattice_sum_3d(cub, BODY_CENTRE, np.array([K0A, 0.0, 0.0]), K0A)
        assert excinfo.value.to_dict()["g"] == [0.0, 0.0, 0.0]

    def test_surface_resonance(self, layer):
        with pytest.raises(SingularConfigurationError):
            lattice_sum_2d(layer, BODY_CENTRE, np.array([K0A, 0.0]), K0A)

    def test_unexcluded_self_term(self, cub):
        config = EwaldConfig(self_term_excluded=False)
        with pytest.raises(GreenDomainError):
            lattice_sum_3d(cub, np.zeros(3), K_GENERIC, K0A, config)

    def test_too_few_shells(self, cub):
        config = EwaldConfig(real_space_shells=1, reciprocal_shells=1)
        with pytest.raises(ConvergenceError) as excinfo:
            lattice_sum_3d(cub, BODY_CENTRE, K_GENERIC, K0A, config)
        assert excinfo.value.spread > config.tolerance

    def test_wrong_dimensionality(self, cub, layer):
        with pytest.raises(ValueError):
            lattice_sum_2d(cub, BODY_CENTRE, K_GENERIC, K0A)
        with pytest.raises(ValueError):
            lattice_sum_3d(layer, BODY_CENTRE, K_GENERIC, K0A)


# ---------------------------------------------------------------------------
# Direct-sum oracle
# ---------------------------------------------------------------------------


ORACLE_SAMPLES = 20


def _oracle_case(seed: int) -> tuple[float, float, np.ndarray, np.ndarray]:
    """(k0 a, damping, k, offset) for one seeded sample.

    Even seeds use a/lambda = 0.1, odd ones 0.4; the damping keeps
    Im(k0 a) = 0.4 pi so the direct sum converges within its radius.
    """
    rng = np.random.default_rng(seed)
    ratio = 0.1 if seed % 2 == 0 else 0.4
    k = rng.uniform(-np.pi, np.pi, 3)
    offset = rng.uniform(0.1, 0.9, 3)
    return 2.0 * np.pi * ratio, 0.2 / ratio, k, offset


class TestDirectSumOracle:
    """Ewald and brute force agree at a damped momentum."""

    @pytest.mark.parametrize("seed", range(ORACLE_SAMPLES))
    def test_bulk_agreement(self, cub, seed):
        k0a, damping, k, offset = _oracle_case(seed)
        oracle = direct_sum_oracle(cub, offset, k, k0a, damping, 25.0)
        ewald = lattice_sum_3d(cub, offset, k, k0a * (1.0 + 1j * damping)).value
        assert _rel(ewald, oracle.value) < 1e-5

    @pytest.mark.parametrize("seed", range(ORACLE_SAMPLES))
    def test_surface_agreement(self, layer, seed):
        k0a, damping, k, offset = _oracle_case(seed)
        k_par = k[1:]
        oracle = direct_sum_oracle(layer, offset, k_par, k0a, damping, 40.0)
        ewald = lattice_sum_2d(layer, offset, k_par, k0a * (1.0 + 1j * damping)).value
        assert _rel(ewald, oracle.value) < 1e-5

    def test_truncation_detected(self, cub):
        with pytest.raises(TruncationError) as excinfo:
            direct_sum_oracle(cub, BODY_CENTRE, K_GENERIC, K0A, 0.05, 4.0)
        assert excinfo.value.last_shell > 1e-8

    def test_damping_must_be_positive(self, cub):
        with pytest.raises(ValueError):
            direct_sum_oracle(cub, BODY_CENTRE, K_GENERIC, K0A, 0.0, 4.0)


class TestRichardson:
    def test_recovers_polynomial_intercept(self):
        intercept = np.array([[1.0 + 2.0j, 0.5], [0.5, -3.0j]])
        slope = np.full((2, 2), 0.7)
        curvature = np.full((2, 2), -0.2j)
        dampings = [0.1, 0.2, 0.4]
        values = [intercept + slope * x + curvature * x**2 for x in dampings]
        np.testing.assert_allclose(
            richardson_extrapolate(dampings, values), intercept, atol=1e-12
        )

    def test_mismatched_inputs(self):
        with pytest.raises(ValueError):
            richardson_extrapolate([0.1, 0.2], [np.eye(3)])
