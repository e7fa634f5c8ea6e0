"""
Tuning parameter validation and the params JSON format.

The persisted form is a flat JSON object keyed by gene name:

    {"insertion_threshold": 3075, "parallel_merge_threshold": 31291,
     "algorithm": 4, "fallback_threshold": 99574, "tile_size": 1418}

The positional list form ``[3075, 31291, 4, 99574, 1418]`` is accepted on input.
"""
import json
from pathlib import Path
from typing import Any, Union

from pydantic import ValidationError

from .errors import ParamsValidationError
from .schemas import (
    GENE_NAMES,
    MERGESORT_ALIASES,
    NUMERIC_GENES,
    AlgorithmCode,
    GeneBounds,
    TuningParams,
)


DEFAULT_BOUNDS = GeneBounds()

# Floor every numeric gene must clear regardless of the configured bounds
ABSOLUTE_MINIMUM = 1


def validate(params: TuningParams, bounds: GeneBounds = DEFAULT_BOUNDS) -> TuningParams:
    """Return params unchanged if every gene is in bounds, else raise ParamsValidationError"""
    for name in NUMERIC_GENES:
        value = getattr(params, name)
        low, high = bounds.range_of(name)
        if value < ABSOLUTE_MINIMUM:
            raise ParamsValidationError(
                f"{name} below minimum {ABSOLUTE_MINIMUM} (got {value}, allowed [{low}, {high}])"
            )
        if value < low:
            raise ParamsValidationError(
                f"{name} below minimum {low} (got {value}, allowed [{low}, {high}])"
            )
        if value > high:
            raise ParamsValidationError(
                f"{name} above maximum {high} (got {value}, allowed [{low}, {high}])"
            )

    # 0-2 are never searched but are valid input: they take the mergesort branch
    if params.algorithm not in bounds.algorithm_codes and params.algorithm not in MERGESORT_ALIASES:
        allowed = sorted(int(code) for code in set(bounds.algorithm_codes) | set(MERGESORT_ALIASES))
        raise ParamsValidationError(
            f"algorithm code {int(params.algorithm)} not in allowed codes {allowed}"
        )
    return params


def params_from_obj(obj: Any) -> TuningParams:
    """Build TuningParams from the object form or the positional list form"""
    if isinstance(obj, (list, tuple)):
        if len(obj) != len(GENE_NAMES):
            raise ParamsValidationError(
                f"positional params need {len(GENE_NAMES)} integers, got {len(obj)}"
            )
        obj = dict(zip(GENE_NAMES, obj))
    if not isinstance(obj, dict):
        raise ParamsValidationError(
            f"params must be a JSON object or list, got {type(obj).__name__}"
        )

    unknown = set(obj) - set(GENE_NAMES)
    missing = set(GENE_NAMES) - set(obj)
    if unknown or missing:
        raise ParamsValidationError(
            f"params keys mismatch (missing: {sorted(missing)}, unknown: {sorted(unknown)})"
        )
    for name in GENE_NAMES:
        if isinstance(obj[name], bool) or not isinstance(obj[name], int):
            raise ParamsValidationError(f"{name} must be an integer, got {obj[name]!r}")
    try:
        return TuningParams(**obj)
    except ValidationError as e:
        raise ParamsValidationError(f"invalid params: {e.errors()[0]['msg']}") from e


def params_to_obj(params: TuningParams) -> dict:
    return {name: int(getattr(params, name)) for name in GENE_NAMES}


def dumps_params(params: TuningParams) -> str:
    return json.dumps(params_to_obj(params))


def loads_params(text: str) -> TuningParams:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParamsValidationError(f"params are not valid JSON: {e}") from e
    return params_from_obj(obj)


def load_params(path: Union[str, Path], bounds: GeneBounds = DEFAULT_BOUNDS) -> TuningParams:
    """Read and validate a params file"""
    return validate(loads_params(Path(path).read_text(encoding="utf-8")), bounds)


def save_params(params: TuningParams, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(params_to_obj(params), indent=2) + "\n", encoding="utf-8")
    return path


def format_genes(params: TuningParams) -> str:
    """Positional list form, e.g. '[3075, 31291, 4, 99574, 1418]'"""
    return "[" + ", ".join(str(v) for v in params.as_list()) + "]"


__all__ = [
    "AlgorithmCode",
    "DEFAULT_BOUNDS",
    "validate",
    "params_from_obj",
    "params_to_obj",
    "dumps_params",
    "loads_params",
    "load_params",
    "save_params",
    "format_genes",
]
