"""Domain models: public API.

Provides convenient imports for the most commonly used domain entities.
"""

from weylarray.domain.models.analysis import (
    BandStructure,
    BulkProjection,
    ContourLine,
    DosHistogram,
    EquifrequencyContour,
    NodalLineScan,
    PhaseDiagram,
    PhaseDiagramCell,
    PlaneCut,
)
from weylarray.domain.models.bands import BandSolution, BlochMatrix
from weylarray.domain.models.enums import (
    Command,
    Facet,
    LatticeKind,
    Polarization,
    SearchMode,
)
from weylarray.domain.models.lattice import KPath, LatticeGeometry
from weylarray.domain.models.lattice_sum import ConvergenceReport, EwaldConfig, GreenLatticeSum
from weylarray.domain.models.params import ArrayParams
from weylarray.domain.models.slab import PolarizationTexture, SlabModel
from weylarray.domain.models.weyl import TrajectoryPoint, WeylNode, WeylSearchResult

__all__ = [
    # Parameters and lattices
    "ArrayParams",
    "KPath",
    "LatticeGeometry",
    # Lattice sums
    "ConvergenceReport",
    "EwaldConfig",
    "GreenLatticeSum",
    # Bands
    "BandSolution",
    "BandStructure",
    "BlochMatrix",
    "BulkProjection",
    "DosHistogram",
    # Contours
    "ContourLine",
    "EquifrequencyContour",
    "NodalLineScan",
    "PlaneCut",
    # Topology
    "PhaseDiagram",
    "PhaseDiagramCell",
    "TrajectoryPoint",
    "WeylNode",
    "WeylSearchResult",
    # Slab
    "PolarizationTexture",
    "SlabModel",
    # Enums
    "Command",
    "Facet",
    "LatticeKind",
    "Polarization",
    "SearchMode",
]
