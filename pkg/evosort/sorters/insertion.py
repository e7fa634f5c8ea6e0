"""Stable binary insertion sort kernels"""
import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def binary_insertion_sort(a, lo, hi):
    """
    Sort a[lo:hi] in place.

    Each new element is placed after every equal element already in the
    sorted prefix, which keeps the sort stable.
    """
    for start in range(lo + 1, hi):
        pivot = a[start]
        left = lo
        right = start
        while left < right:
            mid = left + ((right - left) >> 1)
            if pivot < a[mid]:
                right = mid
            else:
                left = mid + 1
        for p in range(start, left, -1):
            a[p] = a[p - 1]
        a[left] = pivot


@njit(nogil=True, cache=True)
def insertion_sort_chunks(a, chunk_size, first_chunk, last_chunk):
    """Sort each chunk [c * chunk_size, (c + 1) * chunk_size) for c in [first_chunk, last_chunk)"""
    n = a.shape[0]
    for c in range(first_chunk, last_chunk):
        lo = c * chunk_size
        hi = min(lo + chunk_size, n)
        binary_insertion_sort(a, lo, hi)


def insertion_sort(values: np.ndarray) -> None:
    """Stable in-place insertion sort of a 1-d array or array slice"""
    if values.ndim != 1:
        raise ValueError(f"expected a 1-d array, got {values.ndim} dimensions")
    if values.shape[0] > 1:
        binary_insertion_sort(values, 0, values.shape[0])
