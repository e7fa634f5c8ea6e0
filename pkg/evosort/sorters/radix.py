"""
Block-based LSD radix sort for signed 32- and 64-bit integers.

Keys are the elements' bit patterns XOR the sign bit, which maps signed
order onto unsigned order. Every pass handles one byte: each worker counts
its own chunk into a private 256-bin histogram, the coordinator turns the
histograms into per-worker write offsets, and each worker scatters its chunk
into the scratch array. The pass count is even, so the sorted keys end in
the primary array, where the second XOR restores the original values.
"""
import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from numba import njit

from ..common.pool import WorkerPool, borrow_pool
from .buffer import SortBuffer


logger = logging.getLogger(__name__)

BITS_PER_PASS = 8
RADIX = 1 << BITS_PER_PASS

# element dtype -> (unsigned key dtype, sign mask)
_KEY_LAYOUTS = {
    np.dtype(np.int32): (np.dtype(np.uint32), 0x80000000),
    np.dtype(np.int64): (np.dtype(np.uint64), 0x8000000000000000),
}

RADIX_DTYPES = tuple(_KEY_LAYOUTS)


@dataclass(frozen=True)
class RadixPassPlan:
    pass_count: int
    bits_per_pass: int
    sign_mask: int
    key_dtype: np.dtype
    thread_chunks: Tuple[Tuple[int, int], ...]

    @classmethod
    def for_dtype(cls, dtype, n: int, worker_count: int) -> "RadixPassPlan":
        """Plan for n elements of a signed 32/64-bit dtype split over worker_count workers"""
        dtype = np.dtype(dtype)
        if dtype not in _KEY_LAYOUTS:
            raise TypeError(f"radix sort supports int32 and int64 only, got {dtype}")
        if worker_count < 1:
            raise ValueError(f"worker_count must be >= 1, got {worker_count}")
        key_dtype, sign_mask = _KEY_LAYOUTS[dtype]
        step = -(-n // worker_count) if n > 0 else 0
        chunks = tuple(
            (min(w * step, n), min((w + 1) * step, n)) for w in range(worker_count)
        )
        return cls(
            pass_count=dtype.itemsize * 8 // BITS_PER_PASS,
            bits_per_pass=BITS_PER_PASS,
            sign_mask=sign_mask,
            key_dtype=key_dtype,
            thread_chunks=chunks,
        )


def sign_flip(values: np.ndarray) -> np.ndarray:
    """Unsigned keys whose order matches the signed order of values"""
    key_dtype, sign_mask = _KEY_LAYOUTS[values.dtype]
    return values.view(key_dtype) ^ key_dtype.type(sign_mask)


@njit(nogil=True, cache=True)
def _flip_sign(keys, lo, hi, mask):
    for i in range(lo, hi):
        keys[i] ^= mask


@njit(nogil=True, cache=True)
def _histogram(keys, lo, hi, shift, digit_mask, counts):
    counts[:] = 0
    for i in range(lo, hi):
        counts[(keys[i] >> shift) & digit_mask] += 1


@njit(nogil=True, cache=True)
def _scatter(src, dst, lo, hi, shift, digit_mask, offsets):
    # Walking the chunk front to back keeps equal digits in input order
    for i in range(lo, hi):
        key = src[i]
        digit = (key >> shift) & digit_mask
        dst[offsets[digit]] = key
        offsets[digit] += 1


def write_offsets(counts: np.ndarray) -> np.ndarray:
    """
    Per-worker start positions for every digit.

    counts[w, b] is worker w's tally of digit b. Worker w writes digit b from
    the global start of bin b plus everything earlier workers put in bin b.
    """
    totals = counts.sum(axis=0)
    bin_starts = np.cumsum(totals) - totals
    return bin_starts + np.cumsum(counts, axis=0) - counts


def radix_sort_signed(
    buf: SortBuffer,
    plan: RadixPassPlan,
    pool: Union[WorkerPool, int, None] = None,
) -> None:
    """Sort buf.primary in place following plan"""
    n = len(buf)
    if n <= 1:
        return
    if sum(hi - lo for lo, hi in plan.thread_chunks) != n:
        raise ValueError("plan chunks do not cover the buffer")

    key_type = plan.key_dtype.type
    mask = key_type(plan.sign_mask)
    digit_mask = key_type(RADIX - 1)
    chunks = plan.thread_chunks
    keys = buf.primary.view(plan.key_dtype)
    spare = buf.scratch.view(plan.key_dtype)

    with borrow_pool(pool if pool is not None else len(chunks)) as workers:
        workers.run(_flip_sign, [(keys, lo, hi, mask) for lo, hi in chunks if lo < hi])

        counts = np.zeros((len(chunks), RADIX), dtype=np.int64)
        src, dst = keys, spare
        for p in range(plan.pass_count):
            shift = key_type(p * plan.bits_per_pass)
            workers.run(
                _histogram,
                [(src, lo, hi, shift, digit_mask, counts[w]) for w, (lo, hi) in enumerate(chunks)],
            )
            offsets = write_offsets(counts)
            workers.run(
                _scatter,
                [
                    (src, dst, lo, hi, shift, digit_mask, offsets[w])
                    for w, (lo, hi) in enumerate(chunks)
                    if lo < hi
                ],
            )
            src, dst = dst, src

        if src is not keys:
            np.copyto(keys, src)
        workers.run(_flip_sign, [(keys, lo, hi, mask) for lo, hi in chunks if lo < hi])
    logger.debug("radix sorted %d elements in %d passes", n, plan.pass_count)


def radix_sort(values: np.ndarray, pool: Union[WorkerPool, int, None] = None) -> None:
    """Radix-sort a contiguous int32/int64 array in place"""
    with borrow_pool(pool) as workers:
        plan = RadixPassPlan.for_dtype(values.dtype, values.shape[0], workers.workers)
        radix_sort_signed(SortBuffer(values), plan, workers)
