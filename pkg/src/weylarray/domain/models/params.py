"""Physical parameters of the atomic species and the applied field.

Unit system used throughout the package:

* lengths in units of the lattice constant ``a``;
* quasimomenta in units of ``1/a``;
* frequencies as offsets from the bare transition ``omega_0`` in units of
  ``gamma_tilde_0 = gamma_0 / (k0 a)^3``;
* decay rates in units of ``gamma_0`` when reported.
"""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, computed_field


class ArrayParams(BaseModel):
    """Constants of one array configuration (a/lambda_0, muB/gamma_tilde_0)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lattice_constant_ratio: float = Field(..., gt=0.0, description="a / lambda_0")
    zeeman_ratio: float = Field(0.0, description="muB / gamma_tilde_0 (sign = field direction)")
    single_atom_decay: float = Field(1.0, gt=0.0, description="gamma_0, the global rate unit")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def transition_momentum(self) -> float:
        """k0 a = 2 pi a / lambda_0."""
        return 2.0 * math.pi * self.lattice_constant_ratio

    @computed_field  # type: ignore[prop-decorator]
    @property
    def collective_scale(self) -> float:
        """gamma_tilde_0 = gamma_0 / (k0 a)^3."""
        return self.single_atom_decay / self.transition_momentum**3

    # ----- Convenience conversions -----

    @property
    def k0a(self) -> float:
        return self.transition_momentum

    @property
    def gamma0_in_collective_units(self) -> float:
        """gamma_0 expressed in units of gamma_tilde_0, i.e. (k0 a)^3."""
        return self.single_atom_decay / self.collective_scale

    @property
    def coupling_prefactor(self) -> float:
        """-3 pi gamma_0 / k0 in gamma_tilde_0 units for G measured in 1/a."""
        return -3.0 * math.pi * self.gamma0_in_collective_units / self.k0a

    def with_zeeman(self, zeeman_ratio: float) -> ArrayParams:
        return self.model_copy(update={"zeeman_ratio": zeeman_ratio})
