"""Common helpers for result checking and timing"""
import time
from typing import Callable, Optional, Tuple, TypeVar

import numpy as np

from .errors import CorrectnessError


T = TypeVar("T")


# Timings are clamped to this floor so fitness and speedup ratios stay defined
MIN_TIME = 1e-9


def first_divergence(actual: np.ndarray, expected: np.ndarray) -> Optional[int]:
    """Index of the first differing element, or None if the arrays are equal"""
    if actual.shape != expected.shape:
        return min(actual.shape[0], expected.shape[0])
    mismatch = np.flatnonzero(actual != expected)
    if mismatch.size == 0:
        return None
    return int(mismatch[0])


def assert_matches_reference(actual: np.ndarray, expected: np.ndarray) -> None:
    """Raise CorrectnessError at the first element where actual differs from expected"""
    index = first_divergence(actual, expected)
    if index is None:
        return
    if actual.shape != expected.shape:
        raise CorrectnessError(
            f"result has {actual.shape[0]} elements, reference has {expected.shape[0]}",
            index=index,
        )
    raise CorrectnessError(
        f"sorted output diverges from reference at index {index}: "
        f"expected {expected[index]}, got {actual[index]}",
        index=index,
        expected=expected[index].item(),
        actual=actual[index].item(),
    )


def timed(fn: Callable[[], T]) -> Tuple[float, T]:
    """Monotonic wall-clock seconds spent in fn() (clamped to MIN_TIME) and its return value"""
    start = time.perf_counter()
    value = fn()
    return max(time.perf_counter() - start, MIN_TIME), value
