"""Parallel infrastructure: sweep executors."""

from weylarray.infrastructure.parallel.executors import (
    ProcessPoolSweepExecutor,
    SerialExecutor,
    executor_for,
)

__all__ = ["ProcessPoolSweepExecutor", "SerialExecutor", "executor_for"]
