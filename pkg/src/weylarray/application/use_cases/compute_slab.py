"""Use Case: Slab Bands and Fermi Arcs.

Builds the (100)-cut BCC slab, writes its site list, its complex bands
along the surface path with facet and polarization per state, and the
subradiant contours at omega_W (the Fermi arcs). The slab is always cut
from BCC; ``config.lattice`` does not apply here.
"""

from __future__ import annotations

import logging
from typing import Any

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
from weylarray.domain.errors import ConfigurationError
from weylarray.domain.models.enums import Command, Facet, SearchMode
from weylarray.domain.ports.result_writer import ResultWriterPort
from weylarray.domain.ports.sweep_executor import SweepExecutorPort
from weylarray.domain.services.geometry import bcc_lattice, high_symmetry_path, in_light_cone
from weylarray.domain.services.slab import (
    build_slab,
    fermi_arcs,
    polarization_texture,
    slab_bands,
)
from weylarray.domain.services.spectra import bulk_projection
from weylarray.domain.services.weyl import find_weyl_nodes

logger = logging.getLogger(__name__)

SITE_COLUMNS = ("xi", "x", "y", "z", "site_type")
SLAB_BAND_COLUMNS = ("s", "band", "omega", "gamma", "in_light_cone", "facet", "W_x", "W_y", "W_z")
PROJECTION_COLUMNS = ("s", "band", "omega_min", "omega_max")
ARC_COLUMNS = (*CONTOUR_COLUMNS, "facet")


def _is_arc(line: dict[str, Any]) -> bool:
    """An open facet run whose ends are not mask cuts."""
    return (
        not line["closed"]
        and not any(line["cut_ends"])
        and line.get("facet") != Facet.BULK.value
    )


class ComputeSlabUseCase:
    """Orchestrate a slab run."""

    def __init__(
        self, executor: SweepExecutorPort, writer: ResultWriterPort, diagnostics: bool = False
    ) -> None:
        self._executor = executor
        self._writer = writer
        self._diagnostics = diagnostics

    def execute(self, config: RunConfig) -> RunOutcome:
        """Write the slab geometry, bands and arcs.

        Raises:
            SlabWidthError: If the width is not a multiple of a/2.
            ConfigurationError: If no arc frequency is given and the bulk
                has no Weyl node to take it from.
        """
        settings = config.slab
        params = config.params
        bulk = bcc_lattice()
        slab = build_slab(settings.width)

        weyl = find_weyl_nodes(
            bulk,
            params,
            SearchMode.AXIS,
            config.weyl.gap_tol,
            config.ewald,
            self._executor,
            samples=config.weyl.scan_samples,
        )
        omega = settings.omega if settings.omega is not None else weyl.weyl_frequency
        if omega is None:
            raise ConfigurationError(
                f"No bulk Weyl node at these parameters ({weyl.message}); set slab.omega"
            )
        projections = [(0.0, n.k_position[1], n.k_position[2]) for n in weyl.nodes]

        metadata = {
            **run_metadata(config, Command.SLAB),
            "width": settings.width,
            "n_sites": slab.n_sites,
            "omega": omega,
        }
        outcome = RunOutcome(command=Command.SLAB)
        outcome.files.append(
            self._writer.write_csv("slab_sites.csv", SITE_COLUMNS, slab.site_rows(), metadata)
        )

        # -- Bands along the surface path ------------------------------------
        path = high_symmetry_path(slab.geometry, settings.path, settings.samples)
        solutions = slab_bands(slab, params, path.points, config.ewald, self._executor)
        rows = []
        for s, k, solution in zip(path.arc_length, path.points, solutions):
            cone = in_light_cone(k, params.k0a)
            for band in range(solution.n_bands):
                texture = polarization_texture(
                    solution.state(band), slab, settings.edge_fraction, settings.facet_threshold
                )
                rows.append(
                    (
                        s,
                        band,
                        solution.frequencies[band],
                        solution.decay_rates[band],
                        cone,
                        texture.facet.value,
                        *texture.weights,
                    )
                )
        outcome.files.append(
            self._writer.write_csv("slab_bands.csv", SLAB_BAND_COLUMNS, rows, metadata)
        )

        if settings.projection_kx > 0:
            projection = bulk_projection(
                bulk, params, path.points, settings.projection_kx, config.ewald, self._executor
            )
            projection_rows = [
                (s, band, lo, hi)
                for s, lows, highs in zip(path.arc_length, projection.band_min, projection.band_max)
                for band, (lo, hi) in enumerate(zip(lows, highs))
            ]
            outcome.files.append(
                self._writer.write_csv(
                    "slab_projection.csv", PROJECTION_COLUMNS, projection_rows, metadata
                )
            )

        # -- Fermi arcs ------------------------------------------------------
        arcs = fermi_arcs(
            slab,
            params,
            omega,
            settings.grid_n,
            settings.subradiance_cutoff,
            settings.edge_fraction,
            settings.facet_threshold,
            projections,
            config.ewald,
            self._executor,
        )
        outcome.files.append(
            self._writer.write_csv(
                "fermi_arcs.csv", ARC_COLUMNS, contour_rows(arcs, with_facets=True), metadata
            )
        )
        lines = contour_summaries(arcs)
        payload = {
            "config": config_record(config),
            "omega": omega,
            "weyl_projections_pi": projections,
            "facet_planes": slab.facet_planes,
            "path_labels": path.labels,
            "vertex_arc_length": path.vertex_arc_length,
            "lines": lines,
        }
        outcome.files.append(self._writer.write_json("fermi_arcs.json", payload, metadata))
        if self._diagnostics:
            outcome.files.append(
                write_diagnostics(
                    self._writer,
                    slab.geometry,
                    params,
                    path.vertex_coordinates,
                    config.ewald,
                    metadata,
                )
            )
        outcome.summary = {
            "sites": slab.n_sites,
            "omega": omega,
            "open arcs": sum(1 for line in lines if _is_arc(line)),
            "closed curves": sum(1 for line in lines if line["closed"]),
            "cut fragments": sum(1 for line in lines if any(line["cut_ends"])),
        }
        logger.info("Slab w/a=%.1f done: %d polylines", settings.width, len(lines))
        return outcome
