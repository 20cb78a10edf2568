"""Weyl-isolation phase diagram over (a/lambda_0, muB/gamma_tilde_0)."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from functools import partial
from typing import Optional

from weylarray.domain.errors import WeylArrayError
from weylarray.domain.models.analysis import PhaseDiagram, PhaseDiagramCell
from weylarray.domain.models.enums import SearchMode
from weylarray.domain.models.lattice import LatticeGeometry
from weylarray.domain.models.lattice_sum import EwaldConfig
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.ports.sweep_executor import InlineExecutor, SweepExecutorPort
from weylarray.domain.rules.constants import (
    DEFAULT_ISOLATION_THRESHOLD,
    DEFAULT_WINDOW,
    GAP_TOLERANCE,
)
from weylarray.domain.services.geometry import bcc_lattice
from weylarray.domain.services.weyl import find_weyl_nodes, isolation_check

logger = logging.getLogger(__name__)


def _phase_cell(
    lattice: LatticeGeometry,
    grid_n: int,
    window: float,
    threshold: float,
    gap_tol: float,
    config: EwaldConfig,
    cell: tuple[float, float],
) -> PhaseDiagramCell:
    a_over_lambda, muB = cell
    params = ArrayParams(lattice_constant_ratio=a_over_lambda, zeeman_ratio=muB)
    try:
        result = find_weyl_nodes(lattice, params, SearchMode.AXIS, gap_tol, config)
        if not result.found:
            logger.info("cell a=%.3f muB=%.2f: %s", a_over_lambda, muB, result.message)
            return PhaseDiagramCell(a_over_lambda=a_over_lambda, muB=muB, error=result.message)
        node = max(result.nodes, key=lambda n: n.k_position[2])
        isolated, count = isolation_check(
            lattice, params, node, window, grid_n, threshold, config
        )
    except WeylArrayError as exc:
        logger.warning("cell a=%.3f muB=%.2f failed: %s", a_over_lambda, muB, exc)
        return PhaseDiagramCell(a_over_lambda=a_over_lambda, muB=muB, error=str(exc))

    logger.info(
        "cell a=%.3f muB=%.2f omega_W=%.4f |k_W|=%.4f count=%.4g isolated=%s cone=%s",
        a_over_lambda,
        muB,
        node.weyl_frequency,
        node.k_norm,
        count,
        isolated,
        node.in_light_cone,
    )
    return PhaseDiagramCell(
        a_over_lambda=a_over_lambda,
        muB=muB,
        omega_W=node.weyl_frequency,
        k_W=node.k_norm,
        dos_window_count=count,
        in_light_cone=node.in_light_cone,
        isolated=isolated,
    )


def phase_diagram(
    a_grid: Sequence[float],
    muB_grid: Sequence[float],
    grid_n: int,
    window: float = DEFAULT_WINDOW,
    threshold: float = DEFAULT_ISOLATION_THRESHOLD,
    lattice: Optional[LatticeGeometry] = None,
    gap_tol: float = GAP_TOLERANCE,
    config: Optional[EwaldConfig] = None,
    executor: Optional[SweepExecutorPort] = None,
) -> PhaseDiagram:
    """One record per (a, muB) cell; failures are stored in the cell.

    Cells run in row-major order (muB outer, a inner) and come back in
    that order whatever the executor.
    """
    if not a_grid or not muB_grid:
        raise ValueError("phase diagram grids must be non-empty")
    lattice = lattice or bcc_lattice()
    executor = executor or InlineExecutor()
    cells = [(float(a), float(m)) for m in muB_grid for a in a_grid]
    config = config or EwaldConfig()
    work = partial(_phase_cell, lattice, grid_n, window, threshold, gap_tol, config)
    records = executor.map(work, cells)
    return PhaseDiagram(
        a_grid=[float(a) for a in a_grid],
        muB_grid=[float(m) for m in muB_grid],
        window=window,
        threshold=threshold,
        grid_n=grid_n,
        cells=records,
    )


def light_cone_frontier(diagram: PhaseDiagram) -> dict[float, Optional[float]]:
    """Smallest sampled a/lambda_0 whose node lies in the light cone, per muB row."""
    frontier: dict[float, Optional[float]] = {}
    for muB in diagram.muB_grid:
        inside = [
            c.a_over_lambda
            for c in diagram.cells
            if c.muB == muB and c.in_light_cone
        ]
        frontier[muB] = min(inside) if inside else None
    return frontier
