"""Port: Sweep executor: fan independent work items out over workers."""

from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from typing import TypeVar

T = TypeVar("T")
R = TypeVar("R")


class SweepExecutorPort(ABC):
    """Contract for mapping a pure function over work items.

    Results come back in input order, so merges are deterministic
    whatever the number of workers.
    """

    @property
    @abstractmethod
    def workers(self) -> int:
        """Number of worker processes (1 = in-process)."""
        ...

    @abstractmethod
    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
        """Apply ``fn`` to every item and return the results in order."""
        ...


class InlineExecutor(SweepExecutorPort):
    """Default executor used by domain services when none is injected."""

    @property
    def workers(self) -> int:
        return 1

    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
        return [fn(item) for item in items]
