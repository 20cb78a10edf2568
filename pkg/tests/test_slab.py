"""Tests for the (100) slab: geometry, state analysis and Fermi arcs."""

from __future__ import annotations

import numpy as np
import pytest

from weylarray.domain.errors import SlabWidthError
from weylarray.domain.models.analysis import ContourLine
from weylarray.domain.models.enums import Facet
from weylarray.domain.models.slab import SlabModel
from weylarray.domain.services import slab as slab_service
from weylarray.domain.services.geometry import surface_lattice
from weylarray.domain.services.slab import (
    _FACET_CODES,
    _SurfaceSample,
    build_slab,
    facet_classify,
    facet_runs,
    fermi_arcs,
    localization_profile,
    polarization_texture,
    polarization_weight,
    slab_bands,
)


def _state_on_sites(n_sites: int, weights: dict[int, float], beta: int = 2) -> np.ndarray:
    """Unit-norm state with |c|^2 = weights[site] on polarization ``beta``."""
    state = np.zeros(3 * n_sites, dtype=complex)
    for site, w in weights.items():
        state[3 * site + beta] = np.sqrt(w)
    return state / np.linalg.norm(state)


# ── Geometry ─────────────────────────────────────────────────────────────────


class TestBuildSlab:
    def test_reference_width(self):
        slab = build_slab(15.5)
        assert slab.n_sites == 30
        assert slab.geometry.matrix_dimension == 90

    def test_single_layer(self):
        assert build_slab(0.5).n_sites == 1

    def test_sites_ascend_and_alternate(self):
        slab = build_slab(3.0)
        assert slab.n_sites == 5
        np.testing.assert_allclose(np.diff(slab.sites[:, 0]), 0.5)
        assert slab.site_types.tolist() == [0, 1, 0, 1, 0]
        np.testing.assert_allclose(slab.sites[1, 1:], [0.5, 0.5])
        assert slab.facet_planes == (0.0, 2.0)

    def test_site_rows_are_one_based(self):
        rows = build_slab(1.5).site_rows()
        assert rows[0][0] == 1
        assert rows[-1] == (2, 0.5, 0.5, 0.5, 1)

    @pytest.mark.parametrize("width", [15.3, 0.0, -1.0])
    def test_invalid_width(self, width):
        with pytest.raises(SlabWidthError):
            build_slab(width)


# ── State analysis ───────────────────────────────────────────────────────────


class TestStateAnalysis:
    SLAB = build_slab(5.0)  # 9 sites

    def test_profile_sums_to_one(self):
        rng = np.random.default_rng(11)
        state = rng.normal(size=27) + 1j * rng.normal(size=27)
        state /= np.linalg.norm(state)
        assert localization_profile(state, self.SLAB).sum() == pytest.approx(1.0)
        assert polarization_weight(state).sum() == pytest.approx(1.0)

    def test_profile_size_mismatch(self):
        with pytest.raises(ValueError):
            localization_profile(np.ones(6), self.SLAB)

    def test_weights_per_polarization(self):
        state = _state_on_sites(9, {4: 1.0}, beta=0)
        np.testing.assert_allclose(polarization_weight(state), [1.0, 0.0, 0.0])

    def test_top_facet(self):
        state = _state_on_sites(9, {8: 0.7, 7: 0.2, 0: 0.1})
        assert facet_classify(state, self.SLAB) is Facet.FACET_100

    def test_bottom_facet(self):
        state = _state_on_sites(9, {0: 0.8, 4: 0.2})
        assert facet_classify(state, self.SLAB) is Facet.FACET_1BAR00

    def test_spread_state_is_bulk(self):
        state = _state_on_sites(9, {i: 1.0 for i in range(9)})
        assert facet_classify(state, self.SLAB) is Facet.BULK

    def test_texture(self):
        state = _state_on_sites(9, {8: 1.0}, beta=2)
        texture = polarization_texture(state, self.SLAB)
        assert texture.facet is Facet.FACET_100
        assert texture.in_plane_weight == pytest.approx(0.0)
        assert texture.profile[-1] == pytest.approx(1.0)


# ── Bands ────────────────────────────────────────────────────────────────────


class TestSlabBands:
    def test_thin_slab(self, weyl_params):
        slab = build_slab(1.5)
        (solution,) = slab_bands(slab, weyl_params, np.array([[0.0, 1.2, 0.9]]))
        assert solution.n_bands == 6
        assert np.all(np.diff(solution.frequencies) >= 0.0)

    def test_guided_modes_are_passive(self, weyl_params):
        slab = build_slab(1.5)
        (solution,) = slab_bands(slab, weyl_params, np.array([1.2, 0.9]))
        assert np.all(solution.decay_rates > -1e-6)

    def test_subradiant_outside_the_light_cone(self, weyl_params):
        slab = build_slab(15.5)
        (solution,) = slab_bands(slab, weyl_params, np.array([[0.0, 1.2, 0.9]]))
        assert solution.n_bands == 90
        assert np.all(solution.decay_rates < 0.05)

    def test_in_plane_registry_does_not_matter(self, weyl_params):
        slab = build_slab(1.5)
        shifted = SlabModel(
            width=slab.width,
            geometry=surface_lattice(slab.sites + np.array([0.0, 0.3, 0.17])),
            site_types=slab.site_types,
            facet_planes=slab.facet_planes,
        )
        k = np.array([[0.0, 1.2, 0.9]])
        (reference,) = slab_bands(slab, weyl_params, k)
        (moved,) = slab_bands(shifted, weyl_params, k)
        np.testing.assert_allclose(moved.frequencies, reference.frequencies, atol=1e-8)
        np.testing.assert_allclose(moved.decay_rates, reference.decay_rates, atol=1e-8)


# ── Fermi arcs ───────────────────────────────────────────────────────────────


def _fake_sample(slab, params, config, edge_fraction, threshold, k):
    """Three bands offset by 50; the lowest is omega = k_y^2 + k_z^2.

    Every band is subradiant where k_y > 0.
    """
    k_y, k_z = k[1], k[2]
    return _SurfaceSample(
        frequencies=k_y**2 + k_z**2 + np.array([0.0, 50.0, 100.0]),
        decay_rates=np.full(3, 0.0 if k_y > 0.0 else 1.0),
        weights=np.tile([0.0, 0.2, 0.8], (3, 1)),
        facets=np.full(3, _FACET_CODES.index(Facet.FACET_100)),
    )


class TestFermiArcs:
    """Arc extraction on a synthetic surface band."""

    @pytest.fixture
    def fake_slab(self, monkeypatch):
        monkeypatch.setattr(slab_service, "_surface_sample", _fake_sample)
        return build_slab(0.5)  # three bands; only the first carries a contour

    def test_masked_band_gives_open_arc(self, fake_slab, weyl_params):
        contours = fermi_arcs(fake_slab, weyl_params, omega=1.0, grid_n=41)
        assert len(contours) == 1
        contour = contours[0]
        assert contour.band == 0
        assert contour.lines
        for line in contour.lines:
            assert not line.closed
            assert np.all(line.points[:, 1] > -0.2)
            assert line.weights.shape == (len(line), 3)
            assert set(line.facets) == {Facet.FACET_100}

    def test_markers_are_surface_vectors(self, fake_slab, weyl_params):
        contours = fermi_arcs(
            fake_slab,
            weyl_params,
            omega=1.0,
            grid_n=21,
            weyl_projections=[(0.0, 0.0, 0.4), (0.0, 0.0, -0.4)],
        )
        np.testing.assert_allclose(contours[0].markers[:, 2], [0.4 * np.pi, -0.4 * np.pi])
        assert not contours[0].markers[:, 0].any()

    def test_everything_radiant(self, fake_slab, weyl_params):
        contours = fermi_arcs(
            fake_slab, weyl_params, omega=1.0, grid_n=21, subradiance_cutoff=0.0
        )
        assert contours == []

    def test_mask_cut_is_flagged(self, fake_slab, weyl_params):
        (contour,) = fermi_arcs(fake_slab, weyl_params, omega=1.0, grid_n=41)
        assert all(line.is_cut for line in contour.lines)


def _facet_sample(slab, params, config, edge_fraction, threshold, k):
    """Lowest band omega = k_y^2 + k_z^2, all subradiant, on the (100) facet for k_y > 0."""
    k_y, k_z = k[1], k[2]
    facet = Facet.FACET_100 if k_y > 0.0 else Facet.BULK
    return _SurfaceSample(
        frequencies=k_y**2 + k_z**2 + np.array([0.0, 50.0, 100.0]),
        decay_rates=np.zeros(3),
        weights=np.tile([0.0, 0.2, 0.8], (3, 1)),
        facets=np.full(3, _FACET_CODES.index(facet)),
    )


class TestFacetArcs:
    """A closed band contour whose states leave the facet at k_y = 0."""

    # the facet run of the unit circle ends next to (0, +-1)
    PROJECTIONS = [(0.0, 0.0, 1.0 / np.pi), (0.0, 0.0, -1.0 / np.pi)]

    @pytest.fixture
    def contour(self, monkeypatch, weyl_params):
        monkeypatch.setattr(slab_service, "_surface_sample", _facet_sample)
        (contour,) = fermi_arcs(
            build_slab(0.5), weyl_params, omega=1.0, grid_n=41, weyl_projections=self.PROJECTIONS
        )
        return contour

    def test_circle_splits_into_facet_runs(self, contour):
        assert len(contour.lines) == 2
        assert {line.facets[0] for line in contour.lines} == {Facet.FACET_100, Facet.BULK}
        for line in contour.lines:
            assert not line.closed
            assert len(set(line.facets)) == 1

    def test_arc_ends_at_the_projections(self, contour):
        (arc,) = [line for line in contour.lines if line.facets[0] is Facet.FACET_100]
        assert not arc.is_cut
        assert np.all(arc.points[:, 1] > 0.0)
        assert max(arc.marker_distance) <= 2.0


class TestFacetRuns:
    TOP, BULK = Facet.FACET_100, Facet.BULK

    def test_single_facet_line_is_kept(self):
        line = ContourLine(points=np.zeros((3, 3)), closed=True, facets=[self.TOP] * 3)
        assert facet_runs(line, np.zeros(3)) == [line]

    def test_closed_line_starts_at_a_facet_change(self):
        points = np.arange(18.0).reshape(6, 3)
        facets = [self.TOP, self.TOP, self.BULK, self.BULK, self.BULK, self.TOP]
        line = ContourLine(points=points, closed=True, facets=facets)
        shift = np.array([0.0, 0.0, 10.0])
        bulk, top = facet_runs(line, shift)
        np.testing.assert_array_equal(bulk.points, points[2:5])
        np.testing.assert_array_equal(top.points, [points[5], points[0] + shift, points[1] + shift])
        assert top.facets == [self.TOP] * 3
        assert not top.closed and not bulk.closed

    def test_single_vertex_runs_dropped_and_cuts_kept_at_the_ends(self):
        facets = [self.TOP, self.TOP, self.BULK, self.TOP, self.TOP]
        line = ContourLine(
            points=np.zeros((5, 3)),
            closed=False,
            weights=np.tile([0.1, 0.1, 0.8], (5, 1)),
            facets=facets,
            cut_ends=(True, True),
        )
        first, last = facet_runs(line, np.zeros(3))
        assert first.cut_ends == (True, False)
        assert last.cut_ends == (False, True)
        assert first.weights.shape == (2, 3)
