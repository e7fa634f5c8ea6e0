"""EvoSort: hybrid parallel sorting with GA-tuned or model-predicted parameters.

Typical use::

    from evosort import SortBuffer, adaptive_partition_sort, symbolic_params

    buf = SortBuffer(values)
    adaptive_partition_sort(buf, symbolic_params(len(buf)))
"""
from .common import (
    AlgorithmCode,
    EvoSortError,
    GaConfig,
    GeneBounds,
    TuningParams,
    WorkerPool,
    worker_pool,
)
from .dispatch import DispatchDecision, SortPath, adaptive_partition_sort, decide
from .model import symbolic_params
from .sorters import SortBuffer
from .tuner import run_ga_tuning

__version__ = "1.0.0"

__all__ = [
    "AlgorithmCode",
    "EvoSortError",
    "GaConfig",
    "GeneBounds",
    "TuningParams",
    "WorkerPool",
    "worker_pool",
    "DispatchDecision",
    "SortPath",
    "adaptive_partition_sort",
    "decide",
    "symbolic_params",
    "SortBuffer",
    "run_ga_tuning",
]
