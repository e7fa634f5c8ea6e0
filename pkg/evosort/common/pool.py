"""Worker pool that fans nogil numba kernels out over disjoint index ranges"""
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Callable, Generator, List, Optional, Sequence, Tuple, Union

from .settings import get_settings


class WorkerPool:
    """Fixed-size thread pool; every run() call is a barrier"""

    def __init__(self, workers: Optional[int] = None):
        if workers is None:
            workers = get_settings().workers
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self.workers = workers
        self._executor: Optional[ThreadPoolExecutor] = None
        if workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="evosort")

    def split(self, n: int) -> List[Tuple[int, int]]:
        """One contiguous [lo, hi) range of ceil(n / workers) items per worker"""
        step = -(-n // self.workers) if n > 0 else 0
        return [(min(w * step, n), min((w + 1) * step, n)) for w in range(self.workers)]

    def run(self, fn: Callable, tasks: Sequence[tuple]) -> None:
        """Call fn(*task) for every task and wait for all of them"""
        if self._executor is None or len(tasks) <= 1:
            for task in tasks:
                fn(*task)
            return
        futures = [self._executor.submit(fn, *task) for task in tasks]
        for future in futures:
            future.result()

    def shutdown(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.shutdown()


@contextmanager
def worker_pool(workers: Optional[int] = None) -> Generator[WorkerPool, None, None]:
    """Create a pool and shut it down when the block exits"""
    pool = WorkerPool(workers)
    try:
        yield pool
    finally:
        pool.shutdown()


@contextmanager
def borrow_pool(
    pool: Union[WorkerPool, int, None] = None,
) -> Generator[WorkerPool, None, None]:
    """Yield the caller's pool as is, or a temporary one sized by an int / settings"""
    if isinstance(pool, WorkerPool):
        yield pool
        return
    with worker_pool(pool) as temporary:
        yield temporary
