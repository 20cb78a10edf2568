"""Tests for the Typer command-line interface."""

from __future__ import annotations

import json
from unittest.mock import MagicMock, patch

import pytest
from typer.testing import CliRunner

from weylarray.application.dto.run_outcome import RunOutcome
from weylarray.config.loader import load_config, preset_path
from weylarray.domain.errors import ConfigurationError, ConvergenceError
from weylarray.domain.models.enums import Command
from weylarray.presentation.cli.app import app

runner = CliRunner()

_USE_CASE = "weylarray.bootstrap.Container.use_case"


def _use_case(outcome=None, error=None) -> MagicMock:
    use_case = MagicMock()
    if error is not None:
        use_case.execute.side_effect = error
    else:
        use_case.execute.return_value = outcome
    return use_case


# ── config ───────────────────────────────────────────────────────────────────


class TestConfigValidate:
    def test_preset_is_valid(self):
        result = runner.invoke(app, ["config", "validate", str(preset_path("bcc_weyl"))])
        assert result.exit_code == 0
        assert "Configuración válida" in result.output

    def test_missing_file(self, tmp_path):
        result = runner.invoke(app, ["config", "validate", str(tmp_path / "absent.json")])
        assert result.exit_code == 2

    def test_unknown_key(self, write_config):
        result = runner.invoke(app, ["config", "validate", str(write_config({"a_over_lamda": 1}))])
        assert result.exit_code == 2

    def test_broken_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        assert runner.invoke(app, ["config", "validate", str(path)]).exit_code == 2


class TestConfigInit:
    def test_copies_preset(self, tmp_path):
        target = tmp_path / "mine.json"
        result = runner.invoke(app, ["config", "init", "-o", str(target), "-p", "slab_arcs"])
        assert result.exit_code == 0
        assert load_config(target).slab.width == load_config(preset_path("slab_arcs")).slab.width

    def test_unknown_preset(self, tmp_path):
        target = tmp_path / "x.json"
        result = runner.invoke(app, ["config", "init", "-o", str(target), "-p", "nope"])
        assert result.exit_code == 2
        assert not target.exists()

    def test_declined_overwrite_keeps_file(self, tmp_path):
        target = tmp_path / "mine.json"
        target.write_text("{}", encoding="utf-8")
        result = runner.invoke(app, ["config", "init", "-o", str(target)], input="n\n")
        assert result.exit_code != 0
        assert target.read_text(encoding="utf-8") == "{}"


class TestConfigShow:
    def test_shows_defaults(self, write_config):
        result = runner.invoke(app, ["config", "show", "-c", str(write_config())])
        assert result.exit_code == 0
        assert "real_space_shells" in result.output

    def test_invalid_file(self, write_config):
        result = runner.invoke(app, ["config", "show", "-c", str(write_config({"workers": 0}))])
        assert result.exit_code == 2


# ── analysis commands ────────────────────────────────────────────────────────


class TestRunCommands:
    def test_success(self, write_config, tmp_path):
        outcome = RunOutcome(
            command=Command.DOS, files=[tmp_path / "out" / "dos.csv"], summary={"bins": 3}
        )
        with patch(_USE_CASE, return_value=_use_case(outcome)) as factory:
            result = runner.invoke(app, ["dos", "-c", str(write_config())])
        assert result.exit_code == 0
        factory.assert_called_once_with(Command.DOS)

    @pytest.mark.parametrize(
        "name", ["bands", "dos", "contours", "weyl", "phase-diagram", "slab", "trajectory"]
    )
    def test_every_command_dispatches(self, write_config, name):
        outcome = RunOutcome(command=Command(name))
        with patch(_USE_CASE, return_value=_use_case(outcome)) as factory:
            result = runner.invoke(app, [name, "-c", str(write_config())])
        assert result.exit_code == 0
        factory.assert_called_once_with(Command(name))

    def test_workers_option_reaches_config(self, write_config):
        outcome = RunOutcome(command=Command.DOS)
        use_case = _use_case(outcome)
        with patch(_USE_CASE, return_value=use_case):
            runner.invoke(app, ["dos", "-c", str(write_config()), "-w", "2"])
        (config,) = use_case.execute.call_args.args
        assert config.workers == 2

    def test_invalid_config_writes_nothing(self, write_config, tmp_path):
        result = runner.invoke(app, ["dos", "-c", str(write_config({"slab": {"width": 15.3}}))])
        assert result.exit_code == 2
        assert not (tmp_path / "out").exists()

    def test_missing_config(self, tmp_path):
        result = runner.invoke(app, ["weyl", "-c", str(tmp_path / "absent.json")])
        assert result.exit_code == 2

    def test_configuration_error_during_run(self, write_config, tmp_path):
        error = ConfigurationError("set slab.omega")
        with patch(_USE_CASE, return_value=_use_case(error=error)):
            result = runner.invoke(app, ["slab", "-c", str(write_config())])
        assert result.exit_code == 2
        assert not (tmp_path / "out" / "error.json").exists()

    def test_numerical_failure_writes_report(self, write_config, tmp_path):
        error = ConvergenceError("Lattice sum not converged", spread=1e-6)
        with patch(_USE_CASE, return_value=_use_case(error=error)):
            result = runner.invoke(app, ["bands", "-c", str(write_config())])
        assert result.exit_code == 3
        report = json.loads((tmp_path / "out" / "error.json").read_text(encoding="utf-8"))
        assert report["error"] == "ConvergenceError"
        assert report["spread"] == 1e-6
        assert report["metadata"]["command"] == "bands"
