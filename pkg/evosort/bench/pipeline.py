"""
Master pipeline: per size, obtain params, generate data, sort, validate and time baselines.

For every n the pipeline
  1. obtains TuningParams (GA tuning, the symbolic model, or manual params),
  2. generates the seeded dataset (seed + size index),
  3. sorts a copy with numpy for the reference,
  4. runs adaptive_partition_sort and asserts exact equality with the reference,
  5. times the numpy baselines and computes S = T_baseline / T_evosort.
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..common.datagen import generate_dataset
from ..common.errors import CorrectnessError, ParamsValidationError
from ..common.params import format_genes, validate
from ..common.pool import WorkerPool, worker_pool
from ..common.schemas import (
    SEED_LIMIT,
    BenchConfig,
    BenchResult,
    DatasetSpec,
    ParamsSource,
    TuningParams,
)
from ..common.utils import assert_matches_reference, timed
from ..dispatch import DispatchDecision, adaptive_partition_sort
from ..model import symbolic_params
from ..sorters import SortBuffer, warmup
from ..tuner import run_ga_tuning


logger = logging.getLogger(__name__)

# baseline name -> numpy sort kind
BASELINES: Dict[str, str] = {
    "baseline_unstable": "quicksort",
    "baseline_stable": "stable",
}


def compute_speedups(
    n: int, evosort_time: float, baseline_times: Dict[str, float]
) -> Dict[str, float]:
    """S = T_baseline / T_evosort per baseline; 1.0 for an empty dataset"""
    if n == 0:
        return {name: 1.0 for name in baseline_times}
    return {name: t / evosort_time for name, t in baseline_times.items()}


def time_evosort(
    data: np.ndarray, params: TuningParams, pool: WorkerPool, repeats: int
) -> Tuple[float, DispatchDecision, np.ndarray]:
    """Fastest of `repeats` sorts of fresh copies; returns its time, decision and output"""
    best = math.inf
    for _ in range(repeats):
        buf = SortBuffer.copy_of(data)
        elapsed, decision = timed(lambda: adaptive_partition_sort(buf, params, pool))
        best = min(best, elapsed)
    return best, decision, buf.primary


def time_baseline(data: np.ndarray, kind: str, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        copy = data.copy()
        elapsed, _ = timed(lambda: copy.sort(kind=kind))
        best = min(best, elapsed)
    return best


def _obtain_params(
    n: int, mode: ParamsSource, config: BenchConfig, pool: WorkerPool
):
    if mode is ParamsSource.GA:
        return run_ga_tuning(n, config.bounds, config.ga, pool, config.element_width)
    if mode is ParamsSource.SYMBOLIC:
        return symbolic_params(max(n, 1), bounds=config.bounds), None
    if config.manual_params is None:
        raise ParamsValidationError("manual mode needs params")
    return validate(config.manual_params, config.bounds), None


def run_size(
    index: int, n: int, mode: ParamsSource, config: BenchConfig, pool: WorkerPool
) -> BenchResult:
    params, trace = _obtain_params(n, mode, config, pool)
    spec = DatasetSpec(n=n, element_width=config.element_width, seed=config.seed + index)
    data = generate_dataset(spec, config.memory_cap_bytes)
    reference = np.sort(data)

    evosort_time, decision, result = time_evosort(data, params, pool, config.repeats)
    try:
        assert_matches_reference(result, reference)
    except CorrectnessError as e:
        logger.error("validation failed for n=%d with %s: %s", n, format_genes(params), e)
        raise

    baseline_times = {
        name: time_baseline(data, kind, config.repeats) for name, kind in BASELINES.items()
    }
    result_row = BenchResult(
        spec=spec,
        params=params,
        params_source=mode,
        path=decision.chosen_path.value,
        evosort_time=evosort_time,
        baseline_times=baseline_times,
        speedup=compute_speedups(n, evosort_time, baseline_times),
        validated=True,
        trace=trace,
    )
    logger.info(
        "n=%d path=%s evosort=%.4fs speedup=%s",
        n, result_row.path, evosort_time,
        {k: round(v, 2) for k, v in result_row.speedup.items()},
    )
    return result_row


def run_pipeline(
    sizes: Sequence[int],
    mode: Union[ParamsSource, str],
    config: Optional[BenchConfig] = None,
) -> List[BenchResult]:
    """Run the full pipeline for every size in order"""
    if not sizes:
        raise ValueError("sizes must not be empty")
    mode = ParamsSource(mode)
    config = config or BenchConfig()
    if config.seed + len(sizes) > SEED_LIMIT:
        raise ValueError(f"seed {config.seed} + {len(sizes)} sizes passes 2**64")
    if mode is ParamsSource.MANUAL and config.manual_params is None:
        raise ParamsValidationError("manual mode needs params")

    warmup()
    with worker_pool(config.workers) as pool:
        return [run_size(index, n, mode, config, pool) for index, n in enumerate(sizes)]
