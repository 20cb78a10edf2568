"""Enumerations for the atomic-array band computations.

This module is part of the Domain layer and has NO external dependencies
beyond the Python standard library.
"""

from enum import Enum


class LatticeKind(str, Enum):
    """Supported cubic atomic arrays."""

    BCC = "bcc"  # two interpenetrating simple-cubic sublattices
    CUB = "cub"  # simple cubic, one site per cell
    SLAB = "slab"  # (100)-cut BCC slab, 2D-periodic


class Facet(str, Enum):
    """Slab termination a surface state belongs to."""

    FACET_100 = "facet_100"
    FACET_1BAR00 = "facet_1bar00"
    BULK = "bulk"


class SearchMode(str, Enum):
    """Weyl-node search strategy."""

    AXIS = "axis"  # restricted to the k_z axis
    FULL = "full"  # multi-start minimisation over the whole zone


class Polarization(int, Enum):
    """Cartesian polarization index inside a 3x3 block."""

    X = 0
    Y = 1
    Z = 2


# ---------------------------------------------------------------------------
# CLI / output
# ---------------------------------------------------------------------------


class Command(str, Enum):
    """Analyses exposed by the command line."""

    BANDS = "bands"
    DOS = "dos"
    CONTOURS = "contours"
    WEYL = "weyl"
    PHASE_DIAGRAM = "phase-diagram"
    SLAB = "slab"
    TRAJECTORY = "trajectory"
