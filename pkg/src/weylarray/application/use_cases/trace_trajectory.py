"""Use Case: Node Trajectory."""

from __future__ import annotations

from weylarray.application.dto.run_outcome import RunOutcome
from weylarray.application.use_cases.reporting import config_record, run_metadata
from weylarray.config.models import RunConfig
from weylarray.domain.models.enums import Command
from weylarray.domain.ports.result_writer import ResultWriterPort
from weylarray.domain.ports.sweep_executor import SweepExecutorPort
from weylarray.domain.services.geometry import lattice_for
from weylarray.domain.services.weyl import weyl_trajectory

TRAJECTORY_COLUMNS = ("muB", "k_W", "omega_W", "in_light_cone")


class TraceTrajectoryUseCase:
    """Follow the axis node pair across a Zeeman sweep at fixed a/lambda_0."""

    def __init__(self, executor: SweepExecutorPort, writer: ResultWriterPort) -> None:
        self._executor = executor
        self._writer = writer

    def execute(self, config: RunConfig) -> RunOutcome:
        lattice = lattice_for(config.lattice)
        points = weyl_trajectory(
            lattice,
            config.a_over_lambda,
            config.trajectory.values,
            config.weyl.gap_tol,
            config.ewald,
            self._executor,
            config.weyl.scan_samples,
        )
        located = [p for p in points if p.k_W is not None]
        turning = max(located, key=lambda p: p.k_W or 0.0) if located else None

        metadata = run_metadata(config, Command.TRAJECTORY)
        rows = [(p.muB, p.k_W, p.omega_W, p.in_light_cone) for p in points]
        payload = {
            "config": config_record(config),
            "points": points,
            "max_k_W": None if turning is None else {"muB": turning.muB, "k_W": turning.k_W},
        }
        outcome = RunOutcome(command=Command.TRAJECTORY)
        outcome.files.append(
            self._writer.write_csv("trajectory.csv", TRAJECTORY_COLUMNS, rows, metadata)
        )
        outcome.files.append(self._writer.write_json("trajectory.json", payload, metadata))
        outcome.summary = {
            "points": len(points),
            "located": len(located),
            "max |k_W| at muB": None if turning is None else turning.muB,
        }
        return outcome
