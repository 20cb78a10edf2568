"""Value types for lattice sums of the dyadic Green's function."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class EwaldConfig(BaseModel):
    """Numerical knobs of the Ewald splitting."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    splitting_parameter: float = Field(
        default=math.sqrt(math.pi), gt=0.0, description="E, inverse length in units of 1/a"
    )
    real_space_shells: int = Field(default=8, ge=1)
    reciprocal_shells: int = Field(default=12, ge=1)
    self_term_excluded: bool = True
    tolerance: float = Field(default=1e-12, gt=0.0, description="last-shell relative bound")
    resonance_tolerance: float = Field(
        default=1e-9, gt=0.0, description="|k+g| - k0 below this is singular"
    )
    max_exponent: float = Field(
        default=9.0, gt=0.0, description="cap on (k0 / 2E)^2 before E is rescaled"
    )
    verify_splitting: bool = Field(
        default=False, description="recompute at 2E and report the spread"
    )


class ConvergenceReport(BaseModel):
    """Diagnostics attached to every lattice sum (serialisable for --diagnostics)."""

    model_config = ConfigDict(frozen=True)

    splitting_parameter: float
    real_terms: int
    reciprocal_terms: int
    real_shells_used: int
    reciprocal_shells_used: int
    real_last_shell: float
    reciprocal_last_shell: float
    splitting_spread: Optional[float] = None
    rescaled: bool = False


@dataclass(frozen=True, eq=False)
class GreenLatticeSum:
    """S(k, Delta) = sum_R G(Delta - R) e^{i k.R} for one sublattice offset."""

    value: np.ndarray  # (3, 3) complex
    quasimomentum: np.ndarray
    offset: np.ndarray
    periodic_dimension: int
    report: Optional[ConvergenceReport] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "quasimomentum": self.quasimomentum.tolist(),
            "offset": self.offset.tolist(),
            "periodic_dimension": self.periodic_dimension,
            "real": self.value.real.tolist(),
            "imag": self.value.imag.tolist(),
            "report": self.report.model_dump() if self.report else None,
        }
