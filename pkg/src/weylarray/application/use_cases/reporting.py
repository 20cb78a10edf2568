"""Shared helpers for the use cases: metadata, contour tables, diagnostics."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from weylarray import __version__
from weylarray.config.models import RunConfig
from weylarray.domain.models.analysis import EquifrequencyContour
from weylarray.domain.models.enums import Command, Polarization
from weylarray.domain.models.lattice import LatticeGeometry
from weylarray.domain.models.lattice_sum import EwaldConfig
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.ports.result_writer import ResultWriterPort
from weylarray.domain.services.bloch import assemble_bloch

CONTOUR_COLUMNS = ("contour_id", "kx", "ky", "kz", "band", "W_x", "W_y", "W_z")
DIAGNOSTICS_FILE = "ewald_diagnostics.json"


def run_metadata(config: RunConfig, command: Command) -> dict[str, Any]:
    """Header carried by every output file of a run."""
    return {
        "command": command.value,
        "config_hash": config.config_hash(),
        "code_version": __version__,
        "lattice": config.lattice.value,
        "a_over_lambda": config.a_over_lambda,
        "muB_over_gamma_tilde": config.muB_over_gamma_tilde,
    }


def config_record(config: RunConfig) -> dict[str, Any]:
    """The full config for JSON outputs; the worker count is left out."""
    return config.model_dump(mode="json", exclude={"workers"})


def contour_rows(
    contours: Sequence[EquifrequencyContour], with_facets: bool = False
) -> list[tuple[Any, ...]]:
    """One row per vertex; ``contour_id`` numbers the polylines in order."""
    rows: list[tuple[Any, ...]] = []
    contour_id = 0
    for contour in contours:
        for line in contour.lines:
            for i, point in enumerate(line.points):
                weights = line.weights[i] if line.weights is not None else (None, None, None)
                row: tuple[Any, ...] = (contour_id, *point, contour.band, *weights)
                if with_facets:
                    row += (line.facets[i].value if line.facets else None,)
                rows.append(row)
            contour_id += 1
    return rows


def contour_summaries(contours: Sequence[EquifrequencyContour]) -> list[dict[str, Any]]:
    """Per-polyline summary keyed by the same ``contour_id`` as the CSV."""
    summaries = []
    contour_id = 0
    for contour in contours:
        for line in contour.lines:
            entry: dict[str, Any] = {
                "contour_id": contour_id,
                "frequency": contour.frequency,
                "band": contour.band,
                "closed": line.closed,
                "n_points": len(line),
                "enclosed_area": line.enclosed_area,
                "endpoints": None if line.closed else [line.points[0], line.points[-1]],
                "winding": list(line.winding),
                "cut_ends": list(line.cut_ends),
            }
            if line.marker_distance is not None:
                entry["marker_distance_cells"] = list(line.marker_distance)
            if line.weights is not None:
                mean = line.weights.mean(axis=0)
                entry["mean_weights"] = mean
                entry["dominant_polarization"] = Polarization(int(np.argmax(mean))).name
            if line.facets:
                entry["facet"] = Counter(f.value for f in line.facets).most_common(1)[0][0]
            summaries.append(entry)
            contour_id += 1
    return summaries


def write_diagnostics(
    writer: ResultWriterPort,
    lattice: LatticeGeometry,
    params: ArrayParams,
    points: Sequence[np.ndarray],
    config: EwaldConfig,
    metadata: dict[str, Any],
) -> Path:
    """Ewald convergence reports (splitting spread included) at a few k-points."""
    checked = config.model_copy(update={"verify_splitting": True})
    samples = []
    for k in points:
        bloch = assemble_bloch(lattice, params, np.asarray(k, dtype=float), checked)
        samples.append({"k": bloch.quasimomentum, "reports": bloch.reports})
    return writer.write_json(DIAGNOSTICS_FILE, {"samples": samples}, metadata)
