"""Sweep executors: implement SweepExecutorPort.

Both adapters return results in input order. Work items are pure, so the
output does not depend on how many processes computed it.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from weylarray.domain.ports.sweep_executor import SweepExecutorPort

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)

# Items handed to a worker per round trip.
DEFAULT_CHUNKSIZE = 4


class SerialExecutor(SweepExecutorPort):
    """Run every item in the calling process."""

    @property
    def workers(self) -> int:
        return 1

    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
        return [fn(item) for item in items]


class ProcessPoolSweepExecutor(SweepExecutorPort):
    """Fan items out over a ``ProcessPoolExecutor``.

    ``fn`` must be picklable (a module-level function or a
    ``functools.partial`` of one). A fresh pool is opened per ``map`` call.
    """

    def __init__(self, workers: int, chunksize: int = DEFAULT_CHUNKSIZE) -> None:
        if workers < 1:
            raise ValueError("workers must be >= 1")
        if chunksize < 1:
            raise ValueError("chunksize must be >= 1")
        self._workers = workers
        self._chunksize = chunksize

    @property
    def workers(self) -> int:
        return self._workers

    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
        if len(items) <= 1:
            return [fn(item) for item in items]
        logger.debug("Dispatching %d items to %d workers", len(items), self._workers)
        with ProcessPoolExecutor(max_workers=self._workers) as pool:
            return list(pool.map(fn, items, chunksize=self._chunksize))


def executor_for(workers: int) -> SweepExecutorPort:
    """Serial for one worker, a process pool otherwise."""
    if workers <= 1:
        return SerialExecutor()
    return ProcessPoolSweepExecutor(workers)
