"""Use Case: Equifrequency Contours.

Traces isolines on the configured plane at the listed frequencies and at
omega_W + offset for the located Weyl pair. Optionally scans a second
plane for a nodal line.
"""

from __future__ import annotations

import logging

import numpy as np

from weylarray.application.dto.run_outcome import RunOutcome
from weylarray.application.use_cases.reporting import (
    CONTOUR_COLUMNS,
    config_record,
    contour_rows,
    contour_summaries,
    run_metadata,
    write_diagnostics,
)
from weylarray.config.models import RunConfig
from weylarray.domain.models.enums import Command, SearchMode
from weylarray.domain.ports.result_writer import ResultWriterPort
from weylarray.domain.ports.sweep_executor import SweepExecutorPort
from weylarray.domain.services.geometry import lattice_for
from weylarray.domain.services.spectra import equifrequency_contours, nodal_line_scan
from weylarray.domain.services.weyl import find_weyl_nodes

logger = logging.getLogger(__name__)

NODAL_COLUMNS = ("kx", "ky", "kz", "omega")


class ComputeContoursUseCase:
    """Orchestrate an equifrequency-contour run."""

    def __init__(
        self, executor: SweepExecutorPort, writer: ResultWriterPort, diagnostics: bool = False
    ) -> None:
        self._executor = executor
        self._writer = writer
        self._diagnostics = diagnostics

    def execute(self, config: RunConfig) -> RunOutcome:
        settings = config.contours
        lattice = lattice_for(config.lattice)
        params = config.params

        frequencies = list(settings.frequencies)
        markers = None
        weyl = find_weyl_nodes(
            lattice,
            params,
            SearchMode.AXIS,
            config.weyl.gap_tol,
            config.ewald,
            self._executor,
            samples=config.weyl.scan_samples,
        )
        if weyl.found and weyl.weyl_frequency is not None:
            frequencies.extend(weyl.weyl_frequency + off for off in settings.weyl_offsets)
            markers = np.array([node.k_vector for node in weyl.nodes])
        elif not frequencies:
            logger.warning("No Weyl node found and no explicit frequencies: %s", weyl.message)

        contours = equifrequency_contours(
            lattice,
            params,
            settings.plane,
            frequencies,
            settings.grid_n,
            config.ewald,
            self._executor,
            markers,
        )

        metadata = {**run_metadata(config, Command.CONTOURS), "grid_n": settings.grid_n}
        outcome = RunOutcome(command=Command.CONTOURS)
        outcome.files.append(
            self._writer.write_csv(
                "contours.csv", CONTOUR_COLUMNS, contour_rows(contours), metadata
            )
        )
        payload = {
            "config": config_record(config),
            "frequencies": frequencies,
            "omega_w": weyl.weyl_frequency,
            "markers": markers,
            "lines": contour_summaries(contours),
        }

        if settings.nodal_line_plane is not None:
            scan = nodal_line_scan(
                lattice,
                params,
                settings.nodal_line_plane,
                settings.grid_n,
                config.weyl.gap_tol,
                config.ewald,
                self._executor,
            )
            rows = [(*k, w) for k, w in zip(scan.points, scan.frequencies)]
            outcome.files.append(
                self._writer.write_csv("nodal_line.csv", NODAL_COLUMNS, rows, metadata)
            )
            ring = scan.contour.lines[0] if scan.contour and scan.contour.lines else None
            payload["nodal_line"] = {
                "detected": scan.detected,
                "band": scan.band if scan.detected else None,
                "points": int(scan.points.shape[0]),
                "mean_frequency": scan.mean_frequency,
                "closed": ring.closed if ring is not None else None,
            }
            outcome.summary["nodal line"] = (
                f"{scan.mean_frequency:.3f}" if scan.detected else "not detected"
            )

        outcome.files.append(self._writer.write_json("contours.json", payload, metadata))
        if self._diagnostics:
            corners = settings.plane.points(2).reshape(-1, 3)
            outcome.files.append(
                write_diagnostics(self._writer, lattice, params, corners, config.ewald, metadata)
            )
        outcome.summary.update(
            {
                "frequencies": len(frequencies),
                "polylines": sum(len(c.lines) for c in contours),
                "omega_W": weyl.weyl_frequency,
            }
        )
        return outcome
