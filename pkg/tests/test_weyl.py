"""Tests for the Weyl-node search, chirality, isolation and trajectories.

The physics tests run the reference configuration (BCC, a/lambda = 0.1,
muB = 5 gamma_tilde_0); the axis search result is shared per module.
"""

from __future__ import annotations

import numpy as np
import pytest

from weylarray.domain.errors import InconclusiveChiralityError
from weylarray.domain.models.analysis import DosHistogram
from weylarray.domain.models.enums import SearchMode
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.models.weyl import WeylNode, WeylSearchResult
from weylarray.domain.services import weyl as weyl_service
from weylarray.domain.services.geometry import bcc_lattice
from weylarray.domain.services.phase import phase_diagram
from weylarray.domain.services.weyl import (
    berry_flux,
    chirality,
    find_weyl_nodes,
    isolation_check,
    weyl_trajectory,
)

REFERENCE = ArrayParams(lattice_constant_ratio=0.1, zeeman_ratio=5.0)


@pytest.fixture(scope="module")
def reference_search() -> WeylSearchResult:
    return find_weyl_nodes(bcc_lattice(), REFERENCE, SearchMode.AXIS)


def _node(**overrides) -> WeylNode:
    defaults = dict(
        k_position=(0.0, 0.0, 0.5), weyl_frequency=1.0, band_index=2, residual_gap=0.0
    )
    defaults.update(overrides)
    return WeylNode(**defaults)


# ═══════════════════════════════════════════════════════════════════════════════
# Node search
# ═══════════════════════════════════════════════════════════════════════════════


class TestAxisSearch:
    def test_pair_found(self, reference_search):
        assert reference_search.found
        assert len(reference_search.nodes) == 2

    def test_nodes_on_axis_strictly_inside(self, reference_search):
        for node in reference_search.nodes:
            kx, ky, kz = node.k_position
            assert kx == 0.0 and ky == 0.0
            assert 0.0 < abs(kz) < 1.0

    def test_mirror_pair(self, reference_search):
        plus, minus = reference_search.nodes
        assert np.linalg.norm(plus.k_vector + minus.k_vector) < 1e-6
        assert plus.weyl_frequency == minus.weyl_frequency
        assert plus.band_index == minus.band_index

    def test_residual_gap_below_tolerance(self, reference_search):
        for node in reference_search.nodes:
            assert node.residual_gap < 1e-4

    def test_outside_light_cone(self, reference_search):
        assert not any(node.in_light_cone for node in reference_search.nodes)
        assert reference_search.nodes[0].k_norm > 2.0 * 0.1

    def test_weyl_frequency_property(self, reference_search):
        assert reference_search.weyl_frequency == reference_search.nodes[0].weyl_frequency


class TestSearchEdgeCases:
    """Synthetic band fields substituted for the k_z-axis scan."""

    def test_line_degenerate_pairs_skipped(self, bcc, monkeypatch):
        def flat(lattice, params, points, config=None, executor=None):
            return np.zeros((len(points), 6))

        monkeypatch.setattr(weyl_service, "frequency_grid", flat)
        result = find_weyl_nodes(bcc, REFERENCE, SearchMode.AXIS, samples=16)
        assert not result.found
        assert "line-degenerate" in result.message

    def test_open_gap_is_not_an_error(self, bcc, monkeypatch):
        def gapped(lattice, params, points, config=None, executor=None):
            return np.tile(np.arange(6, dtype=float), (len(points), 1))

        monkeypatch.setattr(weyl_service, "frequency_grid", gapped)
        monkeypatch.setattr(
            weyl_service, "band_frequencies", lambda *args, **kwargs: np.arange(6.0)
        )
        result = find_weyl_nodes(bcc, REFERENCE, SearchMode.AXIS, samples=16)
        assert not result.found
        assert result.min_gap == pytest.approx(1.0)
        assert result.chirality_sum == 0

    @staticmethod
    def _use_axis_model(monkeypatch, model):
        def grid(lattice, params, points, config=None, executor=None):
            return np.array([model(p[2]) for p in points])

        monkeypatch.setattr(weyl_service, "frequency_grid", grid)
        monkeypatch.setattr(
            weyl_service, "band_frequencies", lambda lattice, params, k, config=None: model(k[2])
        )

    def test_fold_degeneracy_at_z_is_not_a_node(self, bcc, monkeypatch):
        def model(kz):
            fold = 0.3 * (np.pi - abs(kz))
            cross = 0.5 * abs(abs(kz) - 2.0)
            return np.array([-fold, fold, 5.0 - cross, 5.0 + cross, 10.0, 11.0])

        self._use_axis_model(monkeypatch, model)
        result = find_weyl_nodes(bcc, REFERENCE, SearchMode.AXIS, samples=16)
        assert result.found
        assert result.band_index == 2
        np.testing.assert_allclose(
            sorted(node.k_position[2] for node in result.nodes), [-2.0 / np.pi, 2.0 / np.pi]
        )

    def test_two_fold_touching_only_at_z_is_not_found(self, bcc, monkeypatch):
        def model(kz):
            fold = 0.3 * (np.pi - abs(kz))
            return np.array([-fold, fold, 5.0, 6.0, 10.0, 11.0])

        self._use_axis_model(monkeypatch, model)
        result = find_weyl_nodes(bcc, REFERENCE, SearchMode.AXIS, samples=16)
        assert not result.found
        assert "two-fold" in result.message

    def test_four_fold_point_at_z_is_a_single_node(self, bcc, monkeypatch):
        def model(kz):
            d = 0.3 * (np.pi - abs(kz))
            return np.array([-2.0 * d, -d, d, 2.0 * d, 10.0, 11.0])

        self._use_axis_model(monkeypatch, model)
        result = find_weyl_nodes(bcc, REFERENCE, SearchMode.AXIS, samples=16)
        (node,) = result.nodes
        assert node.k_position == (0.0, 0.0, 1.0)
        assert node.residual_gap < 1e-4


class TestSearchRegimes:
    def test_no_node_without_field(self, bcc):
        result = find_weyl_nodes(bcc, REFERENCE.with_zeeman(0.0), SearchMode.AXIS)
        assert not result.found
        assert result.nodes == []

    def test_resonant_zone_face_is_skipped(self, bcc):
        # k0 a = pi puts Z on a diffraction resonance
        params = ArrayParams(lattice_constant_ratio=0.5, zeeman_ratio=5.0)
        result = find_weyl_nodes(bcc, params, SearchMode.AXIS)
        assert result.found
        assert all(node.in_light_cone for node in result.nodes)


# ═══════════════════════════════════════════════════════════════════════════════
# Chirality
# ═══════════════════════════════════════════════════════════════════════════════


class TestChirality:
    def test_pair_has_opposite_charges(self, bcc, reference_search):
        charges = [chirality(bcc, REFERENCE, node) for node in reference_search.nodes]
        assert sorted(charges) == [-1, 1]

    def test_sphere_without_node_has_no_flux(self, bcc, reference_search):
        band = reference_search.band_index
        center = np.pi * np.array([0.4, 0.2, 0.3])
        flux = berry_flux(bcc, REFERENCE, center, band, sphere_radius=0.05, grid_n=8)
        assert abs(flux) < 0.1

    def test_field_reversal_flips_charge(self, bcc, reference_search):
        upper = max(reference_search.nodes, key=lambda n: n.k_position[2])
        reversed_params = REFERENCE.with_zeeman(-5.0)
        reversed_search = find_weyl_nodes(bcc, reversed_params, SearchMode.AXIS)
        reversed_upper = max(reversed_search.nodes, key=lambda n: n.k_position[2])
        assert reversed_upper.k_position[2] == pytest.approx(upper.k_position[2], abs=1e-4)
        charge = chirality(bcc, REFERENCE, upper)
        assert charge != 0
        assert chirality(bcc, reversed_params, reversed_upper) == -charge

    def test_unquantised_flux_is_inconclusive(self, bcc, monkeypatch):
        monkeypatch.setattr(weyl_service, "berry_flux", lambda *args, **kwargs: 0.5)
        with pytest.raises(InconclusiveChiralityError) as excinfo:
            chirality(bcc, REFERENCE, _node())
        assert excinfo.value.flux == 0.5


# ═══════════════════════════════════════════════════════════════════════════════
# Isolation
# ═══════════════════════════════════════════════════════════════════════════════


class TestIsolation:
    @staticmethod
    def _dos(samples: np.ndarray, n_kpoints: int) -> DosHistogram:
        edges = np.linspace(-10.0, 10.0, 201)
        counts, _ = np.histogram(samples, bins=edges)
        return DosHistogram(
            bin_edges=edges,
            counts=counts / n_kpoints,
            grid_resolution=10,
            samples=samples.ravel(),
            n_kpoints=n_kpoints,
        )

    def test_empty_window_is_isolated(self, bcc):
        samples = np.tile([-5.0, -4.0, -3.0, 3.0, 4.0, 5.0], (1000, 1))
        isolated, count = isolation_check(
            bcc, REFERENCE, _node(weyl_frequency=0.0), dos=self._dos(samples, 1000)
        )
        assert isolated
        assert count == 0.0

    def test_crowded_window_is_not_isolated(self, bcc):
        samples = np.tile([-5.0, -4.0, 0.01, 3.0, 4.0, 5.0], (1000, 1))
        isolated, count = isolation_check(
            bcc, REFERENCE, _node(weyl_frequency=0.0), dos=self._dos(samples, 1000)
        )
        assert not isolated
        assert count == pytest.approx(1.0)

    def test_window_is_closed(self, bcc):
        samples = np.full((1000, 6), 7.0)
        samples[0, 0] = 0.05
        _, count = isolation_check(
            bcc, REFERENCE, _node(weyl_frequency=0.0), window=0.1, dos=self._dos(samples, 1000)
        )
        assert count == pytest.approx(1e-3)


# ═══════════════════════════════════════════════════════════════════════════════
# Sweeps
# ═══════════════════════════════════════════════════════════════════════════════


class TestTrajectory:
    def test_smooth_motion(self, bcc):
        first, second = weyl_trajectory(bcc, 0.1, [5.0, 5.5])
        assert first.error is None and second.error is None
        assert first.k_W < 1.0
        assert abs(second.k_W - first.k_W) < 0.2
        assert second.omega_W > first.omega_W
        assert first.muB == 5.0


class TestPhaseCell:
    def test_reference_cell(self):
        diagram = phase_diagram([0.1], [5.0], grid_n=4)
        (cell,) = diagram.cells
        assert cell.ok
        assert cell.in_light_cone is False
        assert cell.k_W == pytest.approx(
            max(n.k_norm for n in find_weyl_nodes(bcc_lattice(), REFERENCE).nodes)
        )

    def test_large_spacing_cell_is_inside_the_cone(self):
        (cell,) = phase_diagram([0.5], [5.0], grid_n=4).cells
        assert cell.ok
        assert cell.in_light_cone is True

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            phase_diagram([], [5.0], grid_n=4)
