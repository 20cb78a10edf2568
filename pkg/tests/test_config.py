"""Tests for the run-configuration system."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from weylarray.config.loader import get_config, list_presets, load_config, preset_path
from weylarray.config.models import RunConfig, SlabSettings, TrajectorySettings
from weylarray.domain.errors import ConfigurationError
from weylarray.domain.models.enums import LatticeKind, SearchMode
from weylarray.infrastructure.config import JsonConfigProvider


# ---------------------------------------------------------------------------
# Default config loading
# ---------------------------------------------------------------------------


class TestDefaultConfig:
    """Tests for loading the built-in bcc_weyl.json."""

    def test_loads_without_error(self):
        cfg = load_config()
        assert isinstance(cfg, RunConfig)

    def test_reference_parameters(self):
        cfg = load_config()
        assert cfg.lattice is LatticeKind.BCC
        assert cfg.a_over_lambda == 0.1
        assert cfg.muB_over_gamma_tilde == 5.0
        assert cfg.weyl.search is SearchMode.AXIS

    def test_params_conversion(self):
        params = load_config().params
        assert params.lattice_constant_ratio == 0.1
        assert params.zeeman_ratio == 5.0

    def test_defaults_filled(self):
        cfg = load_config()
        assert cfg.ewald.real_space_shells == 8
        assert cfg.slab.width == 15.5
        assert cfg.workers == 1


class TestPresets:
    def test_all_presets_listed(self):
        assert {"bcc_weyl", "bcc_bands", "phase_diagram", "slab_arcs", "trajectory"} <= set(
            list_presets()
        )

    @pytest.mark.parametrize("name", list_presets())
    def test_preset_validates(self, name):
        assert isinstance(load_config(preset_path(name)), RunConfig)

    def test_unknown_preset(self):
        with pytest.raises(ConfigurationError, match="Unknown preset"):
            preset_path("nope")

    def test_cub_comparison_preset(self):
        cfg = load_config(preset_path("cub_comparison"))
        assert cfg.lattice is LatticeKind.CUB
        assert cfg.contours.nodal_line_plane is not None
        assert cfg.contours.nodal_line_plane.origin == (0.0, 0.0, 1.0)


# ---------------------------------------------------------------------------
# Custom config loading
# ---------------------------------------------------------------------------


class TestCustomConfig:
    def test_minimal_document(self, tmp_path):
        path = tmp_path / "minimal.json"
        path.write_text(json.dumps({"a_over_lambda": 0.3}), encoding="utf-8")
        cfg = load_config(path)
        assert cfg.a_over_lambda == 0.3
        assert cfg.muB_over_gamma_tilde == 5.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "typo.json"
        path.write_text(json.dumps({"a_over_lamda": 0.3}), encoding="utf-8")
        with pytest.raises(ValidationError):
            load_config(path)

    def test_nested_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "typo.json"
        path.write_text(json.dumps({"weyl": {"gap_tolerance": 1e-3}}), encoding="utf-8")
        with pytest.raises(ValidationError):
            load_config(path)

    def test_slab_lattice_rejected(self):
        with pytest.raises(ValidationError):
            RunConfig(lattice=LatticeKind.SLAB)

    def test_non_positive_lattice_constant(self):
        with pytest.raises(ValidationError):
            RunConfig(a_over_lambda=0.0)

    def test_reversed_sweep_bounds(self):
        with pytest.raises(ValidationError):
            RunConfig.model_validate({"phase_diagram": {"a_min": 0.5, "a_max": 0.1}})


class TestCaching:
    def test_same_object_returned(self):
        assert load_config() is get_config()

    def test_cache_keyed_by_path(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("{}", encoding="utf-8")
        assert load_config(path) is load_config(path)
        assert load_config(path) is not load_config()


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------


class TestSlabSettings:
    @pytest.mark.parametrize("width", [0.5, 1.0, 15.5])
    def test_half_integer_widths(self, width):
        assert SlabSettings(width=width).width == width

    def test_other_widths_rejected(self):
        with pytest.raises(ValidationError):
            SlabSettings(width=15.3)


class TestSweeps:
    def test_trajectory_values(self):
        values = TrajectorySettings().values
        assert values[0] == 5.0
        assert values[-1] == 14.0
        assert len(values) == 19

    def test_phase_grid(self):
        settings = RunConfig().phase_diagram
        assert len(settings.a_grid) == 6
        assert settings.a_grid[0] == pytest.approx(0.05)
        assert settings.muB_grid[-1] == pytest.approx(20.0)


# ---------------------------------------------------------------------------
# Hashing
# ---------------------------------------------------------------------------


class TestConfigHash:
    def test_ignores_workers(self):
        assert RunConfig(workers=1).config_hash() == RunConfig(workers=8).config_hash()

    def test_tracks_physics(self):
        assert RunConfig().config_hash() != RunConfig(a_over_lambda=0.2).config_hash()

    def test_defaults_are_hashed(self, tmp_path):
        path = tmp_path / "explicit.json"
        path.write_text(json.dumps({"dos": {"grid_n": 16}}), encoding="utf-8")
        assert load_config(path).config_hash() == RunConfig().config_hash()

    def test_canonical_json_is_sorted(self):
        payload = json.loads(RunConfig().canonical_json())
        assert list(payload) == sorted(payload)


# ---------------------------------------------------------------------------
# Provider
# ---------------------------------------------------------------------------


class TestJsonConfigProvider:
    def test_loads_default(self):
        assert JsonConfigProvider().get_config().a_over_lambda == 0.1

    def test_workers_override(self, write_config):
        provider = JsonConfigProvider(write_config({"workers": 2}), workers=4)
        cfg = provider.get_config()
        assert cfg.workers == 4
        assert provider.get_config() is cfg

    def test_override_keeps_hash(self, write_config):
        path: Path = write_config()
        assert (
            JsonConfigProvider(path, workers=6).get_config().config_hash()
            == load_config(path).config_hash()
        )
