"""Persistence infrastructure: result files."""

from weylarray.infrastructure.persistence.atomic_writer import AtomicFileWriter

__all__ = ["AtomicFileWriter"]
