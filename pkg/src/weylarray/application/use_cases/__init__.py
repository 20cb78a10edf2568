"""Application use cases: orchestrate domain logic through ports."""

from weylarray.application.use_cases.compute_bands import ComputeBandsUseCase
from weylarray.application.use_cases.compute_contours import ComputeContoursUseCase
from weylarray.application.use_cases.compute_dos import ComputeDosUseCase
from weylarray.application.use_cases.compute_slab import ComputeSlabUseCase
from weylarray.application.use_cases.locate_weyl_nodes import LocateWeylNodesUseCase
from weylarray.application.use_cases.sweep_phase_diagram import SweepPhaseDiagramUseCase
from weylarray.application.use_cases.trace_trajectory import TraceTrajectoryUseCase

__all__ = [
    "ComputeBandsUseCase",
    "ComputeContoursUseCase",
    "ComputeDosUseCase",
    "ComputeSlabUseCase",
    "LocateWeylNodesUseCase",
    "SweepPhaseDiagramUseCase",
    "TraceTrajectoryUseCase",
]
