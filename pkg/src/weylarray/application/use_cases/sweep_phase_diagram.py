"""Use Case: Phase Diagram.

Sweeps (a/lambda_0, muB/gamma_tilde_0); each cell records omega_W, the
window count around it, the light-cone flag and the isolation verdict.
"""

from __future__ import annotations

import numpy as np

from weylarray.application.dto.run_outcome import RunOutcome
from weylarray.application.use_cases.reporting import (
    config_record,
    run_metadata,
    write_diagnostics,
)
from weylarray.config.models import RunConfig
from weylarray.domain.models.enums import Command
from weylarray.domain.ports.result_writer import ResultWriterPort
from weylarray.domain.ports.sweep_executor import SweepExecutorPort
from weylarray.domain.services.geometry import lattice_for
from weylarray.domain.services.phase import light_cone_frontier, phase_diagram

PHASE_COLUMNS = (
    "a_over_lambda",
    "muB",
    "omega_W",
    "dos_window_count",
    "in_light_cone",
    "isolated",
)


class SweepPhaseDiagramUseCase:
    """Orchestrate a phase-diagram sweep."""

    def __init__(
        self, executor: SweepExecutorPort, writer: ResultWriterPort, diagnostics: bool = False
    ) -> None:
        self._executor = executor
        self._writer = writer
        self._diagnostics = diagnostics

    def execute(self, config: RunConfig) -> RunOutcome:
        settings = config.phase_diagram
        lattice = lattice_for(config.lattice)
        diagram = phase_diagram(
            settings.a_grid,
            settings.muB_grid,
            settings.grid_n,
            settings.window,
            settings.threshold,
            lattice,
            config.weyl.gap_tol,
            config.ewald,
            self._executor,
        )
        frontier = light_cone_frontier(diagram)

        metadata = {
            **run_metadata(config, Command.PHASE_DIAGRAM),
            "grid_n": settings.grid_n,
            "window": settings.window,
            "threshold": settings.threshold,
        }
        rows = [
            (c.a_over_lambda, c.muB, c.omega_W, c.dos_window_count, c.in_light_cone, c.isolated)
            for c in diagram.cells
        ]
        payload = {
            "config": config_record(config),
            "diagram": diagram,
            "light_cone_frontier": [
                {"muB": muB, "a_over_lambda": a} for muB, a in frontier.items()
            ],
        }
        outcome = RunOutcome(command=Command.PHASE_DIAGRAM)
        outcome.files.append(
            self._writer.write_csv("phase_diagram.csv", PHASE_COLUMNS, rows, metadata)
        )
        outcome.files.append(self._writer.write_json("phase_diagram.json", payload, metadata))
        if self._diagnostics:
            outcome.files.append(
                write_diagnostics(
                    self._writer, lattice, config.params, [np.zeros(3)], config.ewald, metadata
                )
            )
        outcome.summary = {
            "cells": len(diagram.cells),
            "isolated": sum(1 for c in diagram.cells if c.isolated),
            "in light cone": sum(1 for c in diagram.cells if c.in_light_cone),
            "failed": sum(1 for c in diagram.cells if c.error is not None),
        }
        return outcome
