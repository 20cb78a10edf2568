"""Composition Root: Dependency Injection Container.

This module is the ONLY place where concrete infrastructure classes are
imported and wired together.  All other layers refer to ports (interfaces).
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Protocol

from weylarray.application.dto.run_outcome import RunOutcome
from weylarray.application.use_cases.compute_bands import ComputeBandsUseCase
from weylarray.application.use_cases.compute_contours import ComputeContoursUseCase
from weylarray.application.use_cases.compute_dos import ComputeDosUseCase
from weylarray.application.use_cases.compute_slab import ComputeSlabUseCase
from weylarray.application.use_cases.locate_weyl_nodes import LocateWeylNodesUseCase
from weylarray.application.use_cases.sweep_phase_diagram import SweepPhaseDiagramUseCase
from weylarray.application.use_cases.trace_trajectory import TraceTrajectoryUseCase
from weylarray.config.models import RunConfig
from weylarray.domain.models.enums import Command
from weylarray.domain.ports.config_provider import ConfigProviderPort
from weylarray.domain.ports.result_writer import ResultWriterPort
from weylarray.domain.ports.sweep_executor import SweepExecutorPort
from weylarray.infrastructure.config.json_config_provider import JsonConfigProvider
from weylarray.infrastructure.parallel.executors import executor_for
from weylarray.infrastructure.persistence.atomic_writer import AtomicFileWriter


class RunUseCase(Protocol):
    def execute(self, config: RunConfig) -> RunOutcome: ...


class Container:
    """Simple dependency injection container.

    Loads the run configuration once and wires the executor and writer it
    asks for into the use cases.

    Usage::

        container = Container(Path("recipe.json"), workers=4)
        outcome = container.use_case(Command.WEYL).execute(container.config)
    """

    def __init__(
        self,
        config_path: Optional[Path] = None,
        workers: Optional[int] = None,
        diagnostics: bool = False,
    ) -> None:
        # -- Infrastructure singletons ---------------------------------------
        self._config_provider = JsonConfigProvider(config_path, workers)
        self._config: RunConfig = self._config_provider.get_config()
        self._executor = executor_for(self._config.workers)
        self._writer = AtomicFileWriter(
            self._config.output.directory, self._config.output.prefix
        )
        self._diagnostics = diagnostics

    # -- Port accessors ------------------------------------------------------

    @property
    def config_provider(self) -> ConfigProviderPort:
        return self._config_provider

    @property
    def config(self) -> RunConfig:
        return self._config

    @property
    def executor(self) -> SweepExecutorPort:
        return self._executor

    @property
    def writer(self) -> ResultWriterPort:
        return self._writer

    # -- Use Case factories --------------------------------------------------

    def compute_bands(self) -> ComputeBandsUseCase:
        return ComputeBandsUseCase(self._executor, self._writer, self._diagnostics)

    def compute_dos(self) -> ComputeDosUseCase:
        return ComputeDosUseCase(self._executor, self._writer, self._diagnostics)

    def compute_contours(self) -> ComputeContoursUseCase:
        return ComputeContoursUseCase(self._executor, self._writer, self._diagnostics)

    def locate_weyl_nodes(self) -> LocateWeylNodesUseCase:
        return LocateWeylNodesUseCase(self._executor, self._writer, self._diagnostics)

    def sweep_phase_diagram(self) -> SweepPhaseDiagramUseCase:
        return SweepPhaseDiagramUseCase(self._executor, self._writer, self._diagnostics)

    def compute_slab(self) -> ComputeSlabUseCase:
        return ComputeSlabUseCase(self._executor, self._writer, self._diagnostics)

    def trace_trajectory(self) -> TraceTrajectoryUseCase:
        return TraceTrajectoryUseCase(self._executor, self._writer)

    def use_case(self, command: Command) -> RunUseCase:
        """Return the use case behind a CLI command."""
        factories = {
            Command.BANDS: self.compute_bands,
            Command.DOS: self.compute_dos,
            Command.CONTOURS: self.compute_contours,
            Command.WEYL: self.locate_weyl_nodes,
            Command.PHASE_DIAGRAM: self.sweep_phase_diagram,
            Command.SLAB: self.compute_slab,
            Command.TRAJECTORY: self.trace_trajectory,
        }
        return factories[command]()
