"""Use Case: Band Structure.

Solves the Bloch problem along a high-symmetry path and writes the
flattened (s, band, omega, gamma, in_light_cone) table plus a JSON mirror.
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
from weylarray.domain.services.geometry import high_symmetry_path, lattice_for
from weylarray.domain.services.spectra import band_structure

BAND_COLUMNS = ("s", "band", "omega", "gamma", "in_light_cone")


class ComputeBandsUseCase:
    """Orchestrate a band-structure run."""

    def __init__(
        self, executor: SweepExecutorPort, writer: ResultWriterPort, diagnostics: bool = False
    ) -> None:
        self._executor = executor
        self._writer = writer
        self._diagnostics = diagnostics

    def execute(self, config: RunConfig) -> RunOutcome:
        """Compute the bands and write ``bands.csv`` and ``bands.json``.

        Raises:
            UnknownLabelError: If a path label is not a zone vertex.
        """
        lattice = lattice_for(config.lattice)
        params = config.params
        path = high_symmetry_path(lattice, config.path.labels, config.path.samples)
        structure = band_structure(lattice, params, path, config.ewald, self._executor)

        metadata = run_metadata(config, Command.BANDS)
        gaps = np.diff(structure.frequencies, axis=1)
        smallest = np.unravel_index(int(np.argmin(gaps)), gaps.shape)
        payload = {
            "config": config_record(config),
            "labels": path.labels,
            "vertices_pi": path.vertex_coordinates_pi,
            "vertex_arc_length": path.vertex_arc_length,
            "arc_length": path.arc_length,
            "frequencies": structure.frequencies,
            "decay_rates": structure.decay_rates,
            "in_light_cone": structure.in_light_cone,
            "max_abs_gamma": float(np.abs(structure.decay_rates).max()),
            "smallest_gap": {
                "s": float(path.arc_length[smallest[0]]),
                "band": int(smallest[1]),
                "gap": float(gaps[smallest]),
            },
        }
        outcome = RunOutcome(command=Command.BANDS)
        outcome.files.append(
            self._writer.write_csv("bands.csv", BAND_COLUMNS, structure.rows(), metadata)
        )
        outcome.files.append(self._writer.write_json("bands.json", payload, metadata))
        if self._diagnostics:
            outcome.files.append(
                write_diagnostics(
                    self._writer, lattice, params, path.vertex_coordinates, config.ewald, metadata
                )
            )
        outcome.summary = {
            "samples": len(path),
            "bands": lattice.matrix_dimension,
            "max |gamma| / gamma_0": payload["max_abs_gamma"],
            "smallest gap": payload["smallest_gap"]["gap"],
        }
        return outcome
