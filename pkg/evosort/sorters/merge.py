"""
Refined bottom-up parallel mergesort and its tiled merge kernel.

The merge output is cut into tiles of ``tile_size`` elements. A binary
search along the merge path finds where each tile's inputs start in the two
runs, so any range of tiles can be produced on its own and in parallel
without changing the result.
"""
import bisect
import heapq
import logging
from typing import Optional, Union

import numpy as np
from numba import njit

from ..common.pool import WorkerPool, borrow_pool
from .buffer import SortBuffer
from .insertion import binary_insertion_sort, insertion_sort_chunks


logger = logging.getLogger(__name__)


@njit(nogil=True, cache=True)
def co_rank(left, right, d):
    """Number of left elements among the first d outputs of the stable merge"""
    lo = max(0, d - right.shape[0])
    hi = min(d, left.shape[0])
    while lo < hi:
        i = (lo + hi) >> 1
        # left[i] <= right[d - i - 1]: left[i] is emitted before right[d - i - 1]
        if left[i] <= right[d - i - 1]:
            lo = i + 1
        else:
            hi = i
    return lo


@njit(nogil=True, cache=True)
def _merge_span(left, i, i_end, right, j, j_end, dest, k):
    while i < i_end and j < j_end:
        if right[j] < left[i]:
            dest[k] = right[j]
            j += 1
        else:
            dest[k] = left[i]
            i += 1
        k += 1
    while i < i_end:
        dest[k] = left[i]
        i += 1
        k += 1
    while j < j_end:
        dest[k] = right[j]
        j += 1
        k += 1


@njit(nogil=True, cache=True)
def merge_tiles(left, right, dest, tile_size, first_tile, last_tile):
    """Write output tiles [first_tile, last_tile) of the stable merge of left and right"""
    total = dest.shape[0]
    start = first_tile * tile_size
    if start >= total:
        return
    i = co_rank(left, right, start)
    j = start - i
    for t in range(first_tile, last_tile):
        d0 = t * tile_size
        if d0 >= total:
            break
        d1 = min(d0 + tile_size, total)
        i1 = co_rank(left, right, d1)
        j1 = d1 - i1
        _merge_span(left, i, i1, right, j, j1, dest, d0)
        i = i1
        j = j1


@njit(nogil=True, cache=True)
def merge_pairs(src, dst, width, tile_size, first_pair, last_pair):
    """Merge adjacent runs of length width, one whole pair at a time"""
    n = src.shape[0]
    for p in range(first_pair, last_pair):
        lo = p * 2 * width
        mid = min(lo + width, n)
        hi = min(lo + 2 * width, n)
        n_tiles = (hi - lo + tile_size - 1) // tile_size
        merge_tiles(src[lo:mid], src[mid:hi], dst[lo:hi], tile_size, 0, n_tiles)


@njit(nogil=True, cache=True)
def merge_level_tiles(src, dst, width, tile_size, first_tile, last_tile):
    """
    Write tiles [first_tile, last_tile) of one merge level.

    Tiles are numbered across the whole level, tiles_per_pair to a pair; the
    last pair may use fewer, and its unused numbers are skipped.
    """
    n = src.shape[0]
    tiles_per_pair = (2 * width + tile_size - 1) // tile_size
    t = first_tile
    while t < last_tile:
        p = t // tiles_per_pair
        lo = p * 2 * width
        if lo >= n:
            break
        mid = min(lo + width, n)
        hi = min(lo + 2 * width, n)
        base = p * tiles_per_pair
        stop = min(last_tile - base, (hi - lo + tile_size - 1) // tile_size)
        if t - base < stop:
            merge_tiles(src[lo:mid], src[mid:hi], dst[lo:hi], tile_size, t - base, stop)
        t = base + tiles_per_pair


def _tile_count(length: int, tile_size: int) -> int:
    return -(-length // tile_size)


# element kinds the compiled kernels handle; float16 is excluded
COMPILED_KINDS = frozenset("biufmMU")


def is_compiled_kind(dtype) -> bool:
    """True when the njit kernels can sort elements of dtype directly"""
    dtype = np.dtype(dtype)
    return dtype.isnative and dtype.kind in COMPILED_KINDS and dtype != np.float16


def python_mergesort(buf: SortBuffer, chunk_size: int) -> None:
    """
    The same bottom-up scheme over Python values, for element types the
    kernels cannot compile, such as object arrays and float16.
    Runs of chunk_size are binary-insertion sorted, then merged pairwise.
    """
    values = buf.primary.tolist()
    runs = []
    for lo in range(0, len(values), chunk_size):
        run = []
        for value in values[lo : lo + chunk_size]:
            bisect.insort_right(run, value)
        runs.append(run)
    while len(runs) > 1:
        # heapq.merge yields equal elements from the earlier run first
        runs = [list(heapq.merge(*runs[i : i + 2])) for i in range(0, len(runs), 2)]
    if runs:
        buf.primary[:] = np.fromiter(runs[0], dtype=buf.primary.dtype, count=len(values))


def merge_tiled(
    left: np.ndarray,
    right: np.ndarray,
    dest: np.ndarray,
    tile_size: int,
    pool: Union[WorkerPool, int, None] = None,
) -> None:
    """Stable merge of two sorted runs into dest; equal elements keep left first"""
    if dest.shape[0] != left.shape[0] + right.shape[0]:
        raise ValueError(
            f"dest holds {dest.shape[0]} elements, runs hold {left.shape[0] + right.shape[0]}"
        )
    if tile_size < 1:
        raise ValueError(f"tile_size must be >= 1, got {tile_size}")
    n_tiles = _tile_count(dest.shape[0], tile_size)
    with borrow_pool(pool) as workers:
        tasks = [
            (left, right, dest, tile_size, lo, hi)
            for lo, hi in workers.split(n_tiles)
            if lo < hi
        ]
        workers.run(merge_tiles, tasks)


def refined_parallel_mergesort(
    buf: SortBuffer,
    chunk_size: int,
    tile_size: int,
    pool: Union[WorkerPool, int, None] = None,
    merge_threshold: Optional[int] = None,
) -> None:
    """
    Bottom-up mergesort of buf.primary.

    Chunks of chunk_size are insertion-sorted in parallel, then runs are
    merged pairwise with the run length doubling each level. Levels whose
    run length is below merge_threshold hand each pair to a single task;
    longer runs are cut into tiles spread evenly over the workers. Without a
    threshold, a level switches to tiles once it has fewer pairs than workers.
    """
    if chunk_size < 1 or tile_size < 1:
        raise ValueError(f"chunk_size and tile_size must be >= 1, got {chunk_size}, {tile_size}")
    n = len(buf)
    if n <= 1:
        return
    dtype = buf.primary.dtype
    if not dtype.isnative:
        native = SortBuffer(buf.primary.astype(dtype.newbyteorder("=")))
        refined_parallel_mergesort(native, chunk_size, tile_size, pool, merge_threshold)
        np.copyto(buf.primary, native.primary)
        return
    if not is_compiled_kind(dtype):
        logger.debug("%s elements use the Python mergesort", buf.primary.dtype)
        python_mergesort(buf, chunk_size)
        return
    if n <= chunk_size:
        binary_insertion_sort(buf.primary, 0, n)
        return

    with borrow_pool(pool) as workers:
        n_chunks = _tile_count(n, chunk_size)
        workers.run(
            insertion_sort_chunks,
            [(buf.primary, chunk_size, lo, hi) for lo, hi in workers.split(n_chunks) if lo < hi],
        )

        src, dst = buf.primary, buf.scratch
        width = chunk_size
        while width < n:
            n_pairs = _tile_count(n, 2 * width)
            if merge_threshold is None:
                pair_tasks = n_pairs >= workers.workers
            else:
                pair_tasks = width < merge_threshold
            if pair_tasks:
                tasks = [
                    (src, dst, width, tile_size, lo, hi)
                    for lo, hi in workers.split(n_pairs)
                    if lo < hi
                ]
                workers.run(merge_pairs, tasks)
            else:
                level_tiles = n_pairs * _tile_count(2 * width, tile_size)
                tasks = [
                    (src, dst, width, tile_size, lo, hi)
                    for lo, hi in workers.split(level_tiles)
                    if lo < hi
                ]
                workers.run(merge_level_tiles, tasks)
            logger.debug("merged level width=%d pairs=%d per_pair=%s", width, n_pairs, pair_tasks)
            src, dst = dst, src
            width *= 2

        if src is not buf.primary:
            np.copyto(buf.primary, src)
