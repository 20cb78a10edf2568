"""Domain errors: custom exceptions for weylarray.

These exceptions are raised by domain services and caught by application
or presentation layers. They carry no infrastructure dependencies.
"""

from __future__ import annotations

from typing import Any


class WeylArrayError(Exception):
    """Base exception for all weylarray errors."""

    def to_dict(self) -> dict[str, Any]:
        """Machine-readable form used by the CLI error report."""
        return {"error": type(self).__name__, "message": str(self)}


class ConfigurationError(WeylArrayError):
    """Raised when a run configuration is invalid or missing."""


class GreenDomainError(WeylArrayError, ValueError):
    """Raised when the dyadic Green's function is evaluated at zero displacement."""


class UnknownLabelError(WeylArrayError, KeyError):
    """Raised when a high-symmetry label is not a vertex of the Brillouin zone."""

    def __init__(self, label: str, known: list[str]) -> None:
        super().__init__(f"Unknown high-symmetry label '{label}' (known: {', '.join(known)})")
        self.label = label
        self.known = known

    def __str__(self) -> str:
        return str(self.args[0])


class SingularConfigurationError(WeylArrayError):
    """Raised when |k + g| coincides with k0 (diffraction / Rayleigh-Wood resonance)."""

    def __init__(self, message: str, g: tuple[float, ...]) -> None:
        super().__init__(message)
        self.g = g

    def to_dict(self) -> dict[str, Any]:
        return {**super().to_dict(), "g": list(self.g)}


class ConvergenceError(WeylArrayError):
    """Raised when an Ewald sum does not converge within its shell budget."""

    def __init__(self, message: str, spread: float) -> None:
        super().__init__(message)
        self.spread = spread

    def to_dict(self) -> dict[str, Any]:
        return {**super().to_dict(), "spread": self.spread}


class TruncationError(WeylArrayError):
    """Raised when a damped direct sum is cut off before its tail is negligible."""

    def __init__(self, message: str, last_shell: float) -> None:
        super().__init__(message)
        self.last_shell = last_shell

    def to_dict(self) -> dict[str, Any]:
        return {**super().to_dict(), "last_shell": self.last_shell}


class EigensolverError(WeylArrayError):
    """Raised when the eigendecomposition of a Bloch matrix fails."""

    def __init__(self, message: str, condition: float) -> None:
        super().__init__(message)
        self.condition = condition

    def to_dict(self) -> dict[str, Any]:
        return {**super().to_dict(), "condition": self.condition}


class InconclusiveChiralityError(WeylArrayError):
    """Raised when a Berry flux is not close enough to an integer."""

    def __init__(self, message: str, flux: float) -> None:
        super().__init__(message)
        self.flux = flux

    def to_dict(self) -> dict[str, Any]:
        return {**super().to_dict(), "flux": self.flux}


class SlabWidthError(WeylArrayError, ValueError):
    """Raised when a slab width does not give an integer number of layers."""
