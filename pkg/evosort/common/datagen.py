"""
Seeded uniform integer datasets.

Values come from numpy's SFC64 generator (a small-state chaotic counter
generator in the same non-cryptographic class as xoshiro) seeded through
SeedSequence. Only the raw 64-bit stream is used, and each draw x is mapped
onto [low, high] with the multiply-shift reduction

    value = low + (x * span) >> 64,    span = high - low + 1 <= 2**32

computed in two 32-bit halves so it stays inside uint64. Both the raw stream
and the reduction are fixed, so one DatasetSpec always yields the same array.
"""
from typing import Optional

import numpy as np

from .errors import DatasetTooLargeError
from .schemas import DatasetSpec
from .settings import get_settings


# Draws generated per block; bounds the uint64 temporaries
BLOCK = 1 << 22

_LOW32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)


def element_dtype(element_width: int) -> np.dtype:
    if element_width == 32:
        return np.dtype(np.int32)
    if element_width == 64:
        return np.dtype(np.int64)
    raise ValueError(f"element width must be 32 or 64, got {element_width}")


def _reduce(raw: np.ndarray, span: np.uint64) -> np.ndarray:
    high = raw >> _SHIFT32
    low = raw & _LOW32
    return (high * span + ((low * span) >> _SHIFT32)) >> _SHIFT32


def generate_dataset(spec: DatasetSpec, memory_cap_bytes: Optional[int] = None) -> np.ndarray:
    """n i.i.d. uniform integers in [low, high] for the given spec"""
    dtype = element_dtype(spec.element_width)
    cap = get_settings().memory_cap_bytes if memory_cap_bytes is None else memory_cap_bytes
    requested = spec.n * dtype.itemsize
    if requested > cap:
        raise DatasetTooLargeError(requested, cap)

    out = np.empty(spec.n, dtype=dtype)
    bitgen = np.random.SFC64(spec.seed)
    span = np.uint64(spec.high - spec.low + 1)
    for start in range(0, spec.n, BLOCK):
        stop = min(start + BLOCK, spec.n)
        raw = bitgen.random_raw(stop - start)
        out[start:stop] = (_reduce(raw, span).astype(np.int64) + spec.low).astype(dtype)
    return out
