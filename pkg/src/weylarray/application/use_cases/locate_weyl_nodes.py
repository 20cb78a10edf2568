"""Use Case: Weyl Nodes.

Locates the node pair, certifies each node's chirality by Berry flux and
checks whether omega_W is frequency-isolated.
"""

from __future__ import annotations

from weylarray.application.dto.run_outcome import RunOutcome
from weylarray.application.use_cases.reporting import (
    config_record,
    run_metadata,
    write_diagnostics,
)
from weylarray.config.models import RunConfig
from weylarray.domain.models.enums import Command
from weylarray.domain.models.weyl import WeylNode
from weylarray.domain.ports.result_writer import ResultWriterPort
from weylarray.domain.ports.sweep_executor import SweepExecutorPort
from weylarray.domain.services.geometry import lattice_for
from weylarray.domain.services.spectra import density_of_states
from weylarray.domain.services.weyl import chirality, find_weyl_nodes, isolation_check


class LocateWeylNodesUseCase:
    """Orchestrate a Weyl-node run."""

    def __init__(
        self, executor: SweepExecutorPort, writer: ResultWriterPort, diagnostics: bool = False
    ) -> None:
        self._executor = executor
        self._writer = writer
        self._diagnostics = diagnostics

    def execute(self, config: RunConfig) -> RunOutcome:
        """Write ``weyl.json``; a not-found search is a valid result.

        Raises:
            InconclusiveChiralityError: If a node's Berry flux is not quantised.
        """
        settings = config.weyl
        lattice = lattice_for(config.lattice)
        params = config.params
        result = find_weyl_nodes(
            lattice,
            params,
            settings.search,
            settings.gap_tol,
            config.ewald,
            self._executor,
            samples=settings.scan_samples,
            seed=config.seed,
            starts=settings.starts,
        )

        nodes: list[WeylNode] = []
        if result.found:
            dos = density_of_states(
                lattice,
                params,
                settings.isolation_grid_n,
                config.dos.bin_width,
                config.ewald,
                self._executor,
            )
            for node in result.nodes:
                charge = (
                    chirality(
                        lattice,
                        params,
                        node,
                        settings.sphere_radius,
                        settings.sphere_grid,
                        config.ewald,
                        self._executor,
                    )
                    if settings.chirality
                    else None
                )
                isolated, count = isolation_check(
                    lattice,
                    params,
                    node,
                    settings.window,
                    settings.isolation_grid_n,
                    settings.threshold,
                    config.ewald,
                    self._executor,
                    dos=dos,
                )
                nodes.append(
                    node.model_copy(
                        update={
                            "chirality": charge,
                            "isolated": isolated,
                            "dos_window_count": count,
                        }
                    )
                )
        result = result.model_copy(update={"nodes": nodes})

        metadata = run_metadata(config, Command.WEYL)
        payload = {
            "config": config_record(config),
            "found": result.found,
            "message": result.message,
            "band_index": result.band_index,
            "min_gap": result.min_gap,
            "chirality_sum": result.chirality_sum,
            "nodes": [
                {
                    **node.to_record(params),
                    "band_index": node.band_index,
                    "dos_window_count": node.dos_window_count,
                }
                for node in nodes
            ],
        }
        outcome = RunOutcome(command=Command.WEYL)
        outcome.files.append(self._writer.write_json("weyl.json", payload, metadata))
        if self._diagnostics and nodes:
            outcome.files.append(
                write_diagnostics(
                    self._writer,
                    lattice,
                    params,
                    [n.k_vector for n in nodes],
                    config.ewald,
                    metadata,
                )
            )
        outcome.summary = {
            "nodes": len(nodes),
            "omega_W": result.weyl_frequency,
            "chirality sum": result.chirality_sum,
            "isolated": all(n.isolated for n in nodes) if nodes else None,
        }
        if not result.found:
            outcome.summary["message"] = result.message
        return outcome
