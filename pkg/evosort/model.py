"""
Closed-form threshold models.

Every numeric gene is predicted by a quadratic in x = log10(n):

    T(n) = a * x**2 + b * x + c

The built-in coefficients were fitted to GA-tuned thresholds for
n in [10**7, 10**10]. They are kept as exact fractions and converted to
float only at evaluation time. Results are rounded to the nearest integer
and clamped into the gene bounds, so extrapolating outside the fitted range
still yields valid parameters.
"""
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple

from .common.errors import ModelError
from .common.params import DEFAULT_BOUNDS, validate
from .common.schemas import NUMERIC_GENES, AlgorithmCode, GeneBounds, TuningParams


class ExtremumKind(str, Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"


class Vertex(NamedTuple):
    x: float
    kind: ExtremumKind

    @property
    def n(self) -> float:
        return 10.0 ** self.x


@dataclass(frozen=True)
class QuadraticModel:
    a: Fraction
    b: Fraction
    c: Fraction
    target: str

    def __post_init__(self):
        if self.target not in NUMERIC_GENES:
            raise ModelError(f"unknown threshold target {self.target!r}")

    def value_at(self, x: float) -> float:
        return float(self.a) * x * x + float(self.b) * x + float(self.c)


@dataclass(frozen=True)
class SymbolicParamSet:
    insertion: QuadraticModel
    parallel_merge: QuadraticModel
    fallback: QuadraticModel
    tile: QuadraticModel
    algorithm: AlgorithmCode = AlgorithmCode.LSD_RADIX

    def models(self) -> List[QuadraticModel]:
        return [self.insertion, self.parallel_merge, self.fallback, self.tile]


INSERTION_MODEL = QuadraticModel(
    a=Fraction(18093685, 726826),
    b=Fraction(-227830214, 693565),
    c=Fraction(1730747635, 502001),
    target="insertion_threshold",
)
PARALLEL_MERGE_MODEL = QuadraticModel(
    a=Fraction(-4279813193, 907161),
    b=Fraction(79199394278, 983501),
    c=Fraction(-309812890693, 956422),
    target="parallel_merge_threshold",
)
FALLBACK_MODEL = QuadraticModel(
    a=Fraction(-3680680444, 890339),
    b=Fraction(39413203286, 521933),
    c=Fraction(-219719696809, 785367),
    target="fallback_threshold",
)
TILE_MODEL = QuadraticModel(
    a=Fraction(2451303315, 877429),
    b=Fraction(-7878849997, 184645),
    c=Fraction(157328357967, 943252),
    target="tile_size",
)

BUILTIN_MODELS = SymbolicParamSet(
    insertion=INSERTION_MODEL,
    parallel_merge=PARALLEL_MERGE_MODEL,
    fallback=FALLBACK_MODEL,
    tile=TILE_MODEL,
)

# Typical gap between GA-tuned and predicted thresholds, in elements. Not enforced.
EXPECTED_RESIDUALS: Dict[str, int] = {
    "insertion_threshold": 2000,
    "parallel_merge_threshold": 10000,
}


def eval_threshold(
    model: QuadraticModel, n: int, bounds: GeneBounds = DEFAULT_BOUNDS
) -> int:
    """Predicted threshold for n elements, rounded and clamped into bounds"""
    if n < 1:
        raise ModelError(f"n must be >= 1 to take log10, got {n}")
    value = model.value_at(math.log10(n))
    return bounds.clamp(model.target, round(value))


def symbolic_params(
    n: int,
    models: SymbolicParamSet = BUILTIN_MODELS,
    bounds: GeneBounds = DEFAULT_BOUNDS,
) -> TuningParams:
    """TuningParams for n from the quadratic models, with the algorithm code fixed"""
    genes = {model.target: eval_threshold(model, n, bounds) for model in models.models()}
    return validate(TuningParams(algorithm=models.algorithm, **genes), bounds)


def vertex(model: QuadraticModel) -> Vertex:
    """Extremum x* = -b / (2a) of the model"""
    if model.a == 0:
        raise ModelError("linear model has no vertex")
    x = -model.b / (2 * model.a)
    kind = ExtremumKind.MINIMUM if model.a > 0 else ExtremumKind.MAXIMUM
    return Vertex(float(x), kind)


def threshold_table(
    sizes: Iterable[int],
    models: SymbolicParamSet = BUILTIN_MODELS,
    bounds: GeneBounds = DEFAULT_BOUNDS,
) -> List[dict]:
    """One row per n with log10(n) and the four predicted thresholds"""
    rows = []
    for n in sizes:
        params = symbolic_params(n, models, bounds)
        row = {"n": n, "log10_n": round(math.log10(n), 4)}
        row.update({name: getattr(params, name) for name in NUMERIC_GENES})
        rows.append(row)
    return rows


def vertex_table(models: SymbolicParamSet = BUILTIN_MODELS) -> List[dict]:
    rows = []
    for model in models.models():
        v = vertex(model)
        rows.append(
            {
                "threshold": model.target,
                "curvature": "convex" if model.a > 0 else "concave",
                "x_star": round(v.x, 4),
                "n_star": f"{v.n:.3g}",
                "kind": v.kind.value,
            }
        )
    return rows
