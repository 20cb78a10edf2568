"""Use Case: Density of States."""

from __future__ import annotations

import numpy as np

from weylarray.application.dto.run_outcome import RunOutcome
from weylarray.application.use_cases.reporting import run_metadata, write_diagnostics
from weylarray.config.models import RunConfig
from weylarray.domain.models.enums import Command
from weylarray.domain.ports.result_writer import ResultWriterPort
from weylarray.domain.ports.sweep_executor import SweepExecutorPort
from weylarray.domain.services.geometry import lattice_for
from weylarray.domain.services.spectra import density_of_states

DOS_COLUMNS = ("bin_center", "density")


class ComputeDosUseCase:
    """Histogram the band frequencies over a uniform zone grid."""

    def __init__(
        self, executor: SweepExecutorPort, writer: ResultWriterPort, diagnostics: bool = False
    ) -> None:
        self._executor = executor
        self._writer = writer
        self._diagnostics = diagnostics

    def execute(self, config: RunConfig) -> RunOutcome:
        lattice = lattice_for(config.lattice)
        dos = density_of_states(
            lattice,
            config.params,
            config.dos.grid_n,
            config.dos.bin_width,
            config.ewald,
            self._executor,
        )
        metadata = {
            **run_metadata(config, Command.DOS),
            "grid_n": config.dos.grid_n,
            "bin_width": config.dos.bin_width,
            "total_weight": dos.total_weight,
        }
        rows = zip(dos.bin_centers, dos.density)
        outcome = RunOutcome(command=Command.DOS)
        outcome.files.append(self._writer.write_csv("dos.csv", DOS_COLUMNS, rows, metadata))
        if self._diagnostics:
            outcome.files.append(
                write_diagnostics(
                    self._writer, lattice, config.params, [np.zeros(3)], config.ewald, metadata
                )
            )
        outcome.summary = {
            "k-points": dos.n_kpoints,
            "bins": int(dos.counts.size),
            "total weight": dos.total_weight,
        }
        return outcome
