"""Pydantic schemas for tuning parameters, GA records and benchmark results"""
import math
from enum import Enum, IntEnum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# Positional order of the gene vector: [T_insertion, T_merge, A_code, T_fallback, T_tile]
GENE_NAMES = (
    "insertion_threshold",
    "parallel_merge_threshold",
    "algorithm",
    "fallback_threshold",
    "tile_size",
)
NUMERIC_GENES = tuple(name for name in GENE_NAMES if name != "algorithm")

# Seeds feed 64-bit generator state
SEED_LIMIT = 2**64


class AlgorithmCode(IntEnum):
    """Categorical gene selecting the large-array strategy"""
    OTHER_0 = 0
    OTHER_1 = 1
    OTHER_2 = 2
    REFINED_MERGESORT = 3
    LSD_RADIX = 4


# Codes 0-2 take the same branch as REFINED_MERGESORT
MERGESORT_ALIASES = (AlgorithmCode.OTHER_0, AlgorithmCode.OTHER_1, AlgorithmCode.OTHER_2)


class TuningParams(BaseModel):
    """The five-gene vector governing every sort dispatch"""
    model_config = ConfigDict(frozen=True)

    insertion_threshold: int
    parallel_merge_threshold: int
    algorithm: AlgorithmCode
    fallback_threshold: int
    tile_size: int

    def as_list(self) -> List[int]:
        return [int(getattr(self, name)) for name in GENE_NAMES]


class GeneBounds(BaseModel):
    """Inclusive integer range per numeric gene plus the searched algorithm codes"""
    model_config = ConfigDict(frozen=True)

    insertion_threshold: Tuple[int, int] = (16, 8192)
    parallel_merge_threshold: Tuple[int, int] = (512, 65536)
    fallback_threshold: Tuple[int, int] = (1024, 131072)
    tile_size: Tuple[int, int] = (256, 32768)
    algorithm_codes: Tuple[AlgorithmCode, ...] = (
        AlgorithmCode.REFINED_MERGESORT,
        AlgorithmCode.LSD_RADIX,
    )

    @model_validator(mode="after")
    def check_ranges(self):
        for name in NUMERIC_GENES:
            low, high = getattr(self, name)
            if low < 1:
                raise ValueError(f"{name} lower bound must be >= 1, got {low}")
            if low > high:
                raise ValueError(f"{name} bounds are inverted: [{low}, {high}]")
        if not self.algorithm_codes:
            raise ValueError("algorithm_codes must not be empty")
        return self

    def range_of(self, name: str) -> Tuple[int, int]:
        if name not in NUMERIC_GENES:
            raise KeyError(f"{name} is not a numeric gene")
        return getattr(self, name)

    def clamp(self, name: str, value: int) -> int:
        low, high = self.range_of(name)
        return min(max(int(value), low), high)


class GaConfig(BaseModel):
    """Genetic algorithm settings"""
    population_size: int = Field(default=30, ge=2)
    generations: int = Field(default=10, ge=1)
    recombination_probability: float = Field(default=0.7, ge=0.0, le=1.0)
    mutation_probability: float = Field(default=0.3, ge=0.0, le=1.0)
    elite_count: int = Field(default=1, ge=0)
    tournament_size: int = Field(default=2, ge=1)
    evaluation_repeats: int = Field(default=1, ge=1)
    rng_seed: int = Field(default=42, ge=0, lt=SEED_LIMIT)
    # Fraction of n actually sampled; 1.0 tunes on the full size
    sample_fraction: float = Field(default=1.0, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def check_population(self):
        if self.elite_count >= self.population_size:
            raise ValueError("elite_count must be smaller than population_size")
        if self.tournament_size > self.population_size:
            raise ValueError("tournament_size cannot exceed population_size")
        return self


class Individual(BaseModel):
    """A GA candidate and its measured sort time"""
    genes: TuningParams
    fitness: Optional[float] = None

    @field_validator("fitness")
    @classmethod
    def check_fitness(cls, v):
        if v is not None and not (v > 0 and math.isfinite(v)):
            raise ValueError(f"fitness must be positive and finite, got {v}")
        return v


class GenerationStats(BaseModel):
    generation: int = Field(..., ge=0)
    best_time: float
    worst_time: float
    average_time: float
    best_genes: TuningParams

    @model_validator(mode="after")
    def check_order(self):
        if not self.best_time <= self.average_time <= self.worst_time:
            raise ValueError(
                f"expected best <= average <= worst, got "
                f"{self.best_time} / {self.average_time} / {self.worst_time}"
            )
        return self


class DatasetSpec(BaseModel):
    """Seeded uniform integer dataset"""
    n: int = Field(..., ge=0)
    element_width: Literal[32, 64] = 64
    low: int = -(10**9)
    high: int = 10**9
    seed: int = Field(default=42, ge=0, lt=SEED_LIMIT)

    @model_validator(mode="after")
    def check_range(self):
        if self.low >= self.high:
            raise ValueError(f"low must be below high, got [{self.low}, {self.high}]")
        if self.high - self.low + 1 > 2**32:
            raise ValueError("value range wider than 2**32 is not supported")
        limit = 2 ** (self.element_width - 1)
        if self.low < -limit or self.high > limit - 1:
            raise ValueError(f"[{self.low}, {self.high}] does not fit int{self.element_width}")
        return self


class ParamsSource(str, Enum):
    GA = "ga"
    SYMBOLIC = "symbolic"
    MANUAL = "manual"


class BenchConfig(BaseModel):
    """Settings shared by every size of one pipeline run"""
    seed: int = Field(default=42, ge=0, lt=SEED_LIMIT)
    element_width: Literal[32, 64] = 64
    repeats: int = Field(default=1, ge=1)
    workers: Optional[int] = Field(default=None, ge=1)
    memory_cap_bytes: Optional[int] = Field(default=None, ge=0)
    bounds: GeneBounds = Field(default_factory=GeneBounds)
    ga: GaConfig = Field(default_factory=GaConfig)
    manual_params: Optional[TuningParams] = None


class BenchResult(BaseModel):
    """Outcome of sorting one dataset size"""
    spec: DatasetSpec
    params: TuningParams
    params_source: ParamsSource
    path: str
    evosort_time: float
    baseline_times: Dict[str, float]
    speedup: Dict[str, float]
    validated: bool
    # Written to its own CSV, never to the results JSON
    trace: Optional[List[GenerationStats]] = Field(default=None, exclude=True)
