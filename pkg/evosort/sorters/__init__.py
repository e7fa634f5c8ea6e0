"""Sorting kernels: insertion sort, refined parallel mergesort, signed LSD radix sort"""
import numpy as np

from .buffer import SortBuffer
from .insertion import insertion_sort
from .merge import is_compiled_kind, merge_tiled, python_mergesort, refined_parallel_mergesort
from .radix import RADIX_DTYPES, RadixPassPlan, radix_sort, radix_sort_signed, sign_flip


def warmup() -> None:
    """Compile every kernel for the common dtypes so no timing pays for the JIT"""
    for dtype in (np.int32, np.int64, np.float64):
        values = np.arange(64, 0, -1).astype(dtype)
        insertion_sort(values[:8].copy())
        refined_parallel_mergesort(SortBuffer(values.copy()), 8, 4, pool=1, merge_threshold=16)
        refined_parallel_mergesort(SortBuffer(values.copy()), 8, 4, pool=1, merge_threshold=1)
        if np.dtype(dtype) in RADIX_DTYPES:
            radix_sort(values.copy(), pool=1)


__all__ = [
    "SortBuffer",
    "RadixPassPlan",
    "RADIX_DTYPES",
    "insertion_sort",
    "merge_tiled",
    "is_compiled_kind",
    "python_mergesort",
    "refined_parallel_mergesort",
    "radix_sort",
    "radix_sort_signed",
    "sign_flip",
    "warmup",
]
