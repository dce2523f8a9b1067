"""Worker pool shared by the chunked passes."""

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from app.core.errors import ContractError

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Thin wrapper over a thread pool.

    numpy releases the GIL inside its ufunc loops, so threads give real parallelism for the
    vectorized chunk kernels. Results come back in submission order; callers combine them on
    the coordinator, which keeps every output independent of the worker count.
    """

    def __init__(self, workers: int) -> None:
        if workers < 1:
            raise ContractError(f"workers must be positive, got {workers}")
        self.workers = workers
        self._executor: ThreadPoolExecutor | None = None
        if workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="kmeanspp-worker")
            logger.debug("Started worker pool with %d threads", workers)

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        items = list(items)
        if self._executor is None or len(items) <= 1:
            return [fn(item) for item in items]
        return list(self._executor.map(fn, items))

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "WorkerPool":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
