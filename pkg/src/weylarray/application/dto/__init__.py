"""Data Transfer Objects: results handed back to the presentation layer."""

from weylarray.application.dto.run_outcome import RunOutcome

__all__ = ["RunOutcome"]
