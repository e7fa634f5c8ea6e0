"""Common package initialization"""
from .errors import (
    EvoSortError,
    ParamsValidationError,
    ModelError,
    DatasetTooLargeError,
    CorrectnessError,
    ReportWriteError,
    PlotUnavailableError,
)
from .schemas import (
    GENE_NAMES,
    NUMERIC_GENES,
    AlgorithmCode,
    TuningParams,
    GeneBounds,
    GaConfig,
    Individual,
    GenerationStats,
    DatasetSpec,
    ParamsSource,
    BenchConfig,
    BenchResult,
)
from .params import (
    DEFAULT_BOUNDS,
    validate,
    params_from_obj,
    params_to_obj,
    dumps_params,
    loads_params,
    load_params,
    save_params,
    format_genes,
)
from .settings import Settings, get_settings, detect_workers
from .pool import WorkerPool, worker_pool, borrow_pool
from .datagen import generate_dataset, element_dtype
from .utils import assert_matches_reference, first_divergence, timed

__all__ = [
    # Errors
    "EvoSortError",
    "ParamsValidationError",
    "ModelError",
    "DatasetTooLargeError",
    "CorrectnessError",
    "ReportWriteError",
    "PlotUnavailableError",
    # Schemas
    "GENE_NAMES",
    "NUMERIC_GENES",
    "AlgorithmCode",
    "TuningParams",
    "GeneBounds",
    "GaConfig",
    "Individual",
    "GenerationStats",
    "DatasetSpec",
    "ParamsSource",
    "BenchConfig",
    "BenchResult",
    # Params
    "DEFAULT_BOUNDS",
    "validate",
    "params_from_obj",
    "params_to_obj",
    "dumps_params",
    "loads_params",
    "load_params",
    "save_params",
    "format_genes",
    # Settings
    "Settings",
    "get_settings",
    "detect_workers",
    # Worker pool
    "WorkerPool",
    "worker_pool",
    "borrow_pool",
    # Data and checks
    "generate_dataset",
    "element_dtype",
    "assert_matches_reference",
    "first_divergence",
    "timed",
]
