"""Weyl nodes and node-search results."""

from __future__ import annotations

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, Field

from weylarray.domain.models.params import ArrayParams

Vector3 = tuple[float, float, float]


class WeylNode(BaseModel):
    """A located two-band touching point.

    ``k_position`` is in units of pi/a, ``weyl_frequency`` in gamma_tilde_0
    units relative to omega_0.
    """

    k_position: Vector3
    weyl_frequency: float
    band_index: int = Field(..., ge=0, description="lower band of the crossing pair")
    residual_gap: float = Field(..., ge=0.0)
    chirality: Optional[int] = None
    in_light_cone: bool = False
    isolated: Optional[bool] = None
    dos_window_count: Optional[float] = None

    @property
    def k_vector(self) -> np.ndarray:
        """Position in units of 1/a."""
        return np.pi * np.asarray(self.k_position, dtype=float)

    @property
    def k_norm(self) -> float:
        """|k_W| in units of pi/a."""
        return float(np.linalg.norm(self.k_position))

    def to_record(self, params: ArrayParams) -> dict[str, Any]:
        """Flat JSON record of the node."""
        return {
            "a_over_lambda": params.lattice_constant_ratio,
            "muB_over_gamma_tilde": params.zeeman_ratio,
            "k_w": list(self.k_position),
            "omega_w": self.weyl_frequency,
            "chirality": self.chirality,
            "residual_gap": self.residual_gap,
            "in_light_cone": self.in_light_cone,
            "isolated": self.isolated,
        }


class WeylSearchResult(BaseModel):
    """Outcome of a node search; ``found`` is False when no gap closes."""

    nodes: list[WeylNode] = Field(default_factory=list)
    band_index: Optional[int] = None
    min_gap: Optional[float] = None
    message: str = ""

    @property
    def found(self) -> bool:
        return bool(self.nodes)

    @property
    def weyl_frequency(self) -> Optional[float]:
        return self.nodes[0].weyl_frequency if self.nodes else None

    @property
    def chirality_sum(self) -> int:
        return sum(n.chirality or 0 for n in self.nodes)


class TrajectoryPoint(BaseModel):
    """Node position and frequency at one Zeeman splitting."""

    muB: float
    k_W: Optional[float] = Field(default=None, description="|k_W| in units of pi/a")
    omega_W: Optional[float] = None
    in_light_cone: Optional[bool] = None
    error: Optional[str] = None
