"""Numerical constants and fixed conventions: pure domain values.

These values have NO dependency on configuration files. Run-level
overrides live in ``weylarray.config.models`` and are passed explicitly
to the services that consume them.
"""

from dataclasses import dataclass

import numpy as np


# ---------------------------------------------------------------------------
# Value Objects (frozen dataclasses)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexSpec:
    """A labelled high-symmetry point of the cubic zone, in units of pi/a."""

    label: str
    coordinates: tuple[float, float, float]

    def as_vector(self) -> np.ndarray:
        """Coordinates in units of 1/a."""
        return np.pi * np.asarray(self.coordinates, dtype=float)


# ---------------------------------------------------------------------------
# Brillouin zone of the cubic description (cube of side 2 pi / a)
# ---------------------------------------------------------------------------

CUBIC_VERTICES: tuple[VertexSpec, ...] = (
    VertexSpec("G", (0.0, 0.0, 0.0)),
    VertexSpec("Z", (0.0, 0.0, 1.0)),
    VertexSpec("A", (1.0, 1.0, 1.0)),
    VertexSpec("M", (1.0, 1.0, 0.0)),
    VertexSpec("R", (0.0, 1.0, 1.0)),
    VertexSpec("X", (1.0, 0.0, 0.0)),
)

# Surface (y, z) zone of the (100) slab, vectors stored as (0, k_y, k_z)
SURFACE_VERTICES: tuple[VertexSpec, ...] = (
    VertexSpec("G", (0.0, 0.0, 0.0)),
    VertexSpec("Z", (0.0, 0.0, 1.0)),
    VertexSpec("Y", (0.0, 1.0, 0.0)),
    VertexSpec("M", (0.0, 1.0, 1.0)),
)

# Accepted aliases for Gamma
GAMMA_ALIASES: frozenset[str] = frozenset({"G", "Γ", "GAMMA", "Gamma", "gamma"})

DEFAULT_BULK_PATH: tuple[str, ...] = ("G", "Z", "A", "M", "G", "R", "Z")
DEFAULT_SURFACE_PATH: tuple[str, ...] = ("Y", "G", "Z", "M", "Y")

# ---------------------------------------------------------------------------
# Band sorting and degeneracy handling
# ---------------------------------------------------------------------------

DEGENERACY_TOLERANCE: float = 1e-9  # gamma_tilde_0
DEGENERATE_CLUSTER_TOLERANCE: float = 1e-6  # used to count clusters at high-symmetry points

# ---------------------------------------------------------------------------
# Weyl search
# ---------------------------------------------------------------------------

GAP_TOLERANCE: float = 1e-4  # gamma_tilde_0
MAX_REFINEMENT_STEPS: int = 60
AXIS_SCAN_SAMPLES: int = 121
LINE_DEGENERACY_FRACTION: float = 0.2  # share of scan samples degenerate => not a point node
ZONE_FACE_TOLERANCE: float = 1e-6  # 1/a; refined nodes this close to Gamma or Z sit on a face
RESONANCE_MARGIN: float = 10.0  # skip samples within this many resonance tolerances
CHIRALITY_TOLERANCE: float = 0.1
DEFAULT_SPHERE_RADIUS: float = 0.05  # units of pi/a
DEFAULT_SPHERE_GRID: int = 20
MULTISTART_POINTS: int = 24

# ---------------------------------------------------------------------------
# Density of states / isolation
# ---------------------------------------------------------------------------

DEFAULT_WINDOW: float = 0.1  # gamma_tilde_0
DEFAULT_ISOLATION_THRESHOLD: float = 1e-3  # fraction of the total states per k-point
MIN_DOS_GRID: int = 4

# ---------------------------------------------------------------------------
# Slab
# ---------------------------------------------------------------------------

SLAB_LAYER_SPACING: float = 0.5  # units of a
DEFAULT_EDGE_FRACTION: float = 1.0 / 3.0
DEFAULT_FACET_THRESHOLD: float = 0.6
SUBRADIANCE_CUTOFF: float = 0.5  # gamma_0
