"""AdaptivePartitionSort: choose the host sort, radix sort or refined mergesort"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Union

import numpy as np

from .common.pool import WorkerPool, borrow_pool
from .common.schemas import AlgorithmCode, TuningParams
from .sorters import RADIX_DTYPES, RadixPassPlan, SortBuffer, radix_sort_signed
from .sorters import refined_parallel_mergesort


logger = logging.getLogger(__name__)


class SortPath(str, Enum):
    HOST_STANDARD_SORT = "host_standard_sort"
    RADIX_SORT = "radix_sort"
    REFINED_MERGESORT = "refined_mergesort"


@dataclass(frozen=True)
class DispatchDecision:
    chosen_path: SortPath
    reason: str


def is_radix_kind(element_kind: Any) -> bool:
    """True for 32/64-bit signed integer element types in either byte order"""
    try:
        return np.dtype(element_kind).newbyteorder("=") in RADIX_DTYPES
    except (TypeError, ValueError):
        return False


def decide(n: int, element_kind: Any, params: TuningParams) -> DispatchDecision:
    """Pick the sort path for n elements of element_kind under params"""
    if n < params.fallback_threshold:
        return DispatchDecision(
            SortPath.HOST_STANDARD_SORT,
            f"n={n} < fallback_threshold={params.fallback_threshold}",
        )
    code = params.algorithm
    if code == AlgorithmCode.LSD_RADIX:
        if is_radix_kind(element_kind):
            return DispatchDecision(
                SortPath.RADIX_SORT,
                f"n={n} >= fallback_threshold, code 4 and {np.dtype(element_kind)} is a "
                f"32/64-bit signed integer",
            )
        reason = f"code 4 but {element_kind!r} is not a 32/64-bit signed integer"
    elif code == AlgorithmCode.REFINED_MERGESORT:
        reason = "code 3 selects refined mergesort"
    else:
        reason = f"code {int(code)} falls through to refined mergesort"
    return DispatchDecision(SortPath.REFINED_MERGESORT, f"n={n} >= fallback_threshold, {reason}")


def adaptive_partition_sort(
    buf: SortBuffer,
    params: TuningParams,
    pool: Union[WorkerPool, int, None] = None,
) -> DispatchDecision:
    """Sort buf.primary in place and report which path ran"""
    decision = decide(len(buf), buf.primary.dtype, params)
    logger.debug("dispatch: %s (%s)", decision.chosen_path.value, decision.reason)

    if decision.chosen_path is SortPath.HOST_STANDARD_SORT:
        buf.primary.sort()
        return decision

    if not buf.primary.dtype.isnative:
        # kernels run on a native-order copy; the result is cast back into primary
        native = SortBuffer(buf.primary.astype(buf.primary.dtype.newbyteorder("=")))
        _run_path(decision, native, params, pool)
        np.copyto(buf.primary, native.primary)
    else:
        _run_path(decision, buf, params, pool)
    return decision


def _run_path(
    decision: DispatchDecision,
    buf: SortBuffer,
    params: TuningParams,
    pool: Union[WorkerPool, int, None],
) -> None:
    with borrow_pool(pool) as workers:
        if decision.chosen_path is SortPath.RADIX_SORT:
            plan = RadixPassPlan.for_dtype(buf.primary.dtype, len(buf), workers.workers)
            radix_sort_signed(buf, plan, workers)
        else:
            refined_parallel_mergesort(
                buf,
                chunk_size=params.insertion_threshold,
                tile_size=params.tile_size,
                pool=workers,
                merge_threshold=params.parallel_merge_threshold,
            )
