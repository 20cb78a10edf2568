"""Infrastructure layer: external framework adapters."""

from weylarray.infrastructure.config.json_config_provider import JsonConfigProvider
from weylarray.infrastructure.parallel.executors import (
    ProcessPoolSweepExecutor,
    SerialExecutor,
)
from weylarray.infrastructure.persistence.atomic_writer import AtomicFileWriter

__all__ = [
    "AtomicFileWriter",
    "JsonConfigProvider",
    "ProcessPoolSweepExecutor",
    "SerialExecutor",
]
