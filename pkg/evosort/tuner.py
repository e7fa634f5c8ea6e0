"""
Genetic-algorithm auto-tuner for TuningParams.

Fitness is the wall-clock time adaptive_partition_sort needs on a fixed
sample (lower is better). Each generation keeps its elite unchanged, with
their recorded fitness, and fills the rest by tournament selection, uniform
crossover and per-gene resampling mutation. Gene decisions read only
recorded fitness values, so the gene sequence is a function of the seed and
the measured times.
"""
import csv
import logging
import math
import statistics
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .common.datagen import generate_dataset
from .common.errors import ReportWriteError
from .common.params import DEFAULT_BOUNDS, format_genes
from .common.pool import WorkerPool, borrow_pool
from .common.schemas import (
    GENE_NAMES,
    DatasetSpec,
    GaConfig,
    GeneBounds,
    GenerationStats,
    Individual,
    TuningParams,
)
from .common.utils import assert_matches_reference, timed
from .dispatch import adaptive_partition_sort
from .sorters import SortBuffer, warmup


logger = logging.getLogger(__name__)

TRACE_HEADER = ["generation", "best_time_s", "worst_time_s", "avg_time_s", "best_genes"]


def random_gene(name: str, bounds: GeneBounds, rng: np.random.Generator) -> int:
    """Uniform draw of one gene from its bounds"""
    if name == "algorithm":
        codes = bounds.algorithm_codes
        return int(codes[int(rng.integers(len(codes)))])
    low, high = bounds.range_of(name)
    return int(rng.integers(low, high, endpoint=True))


def random_genes(bounds: GeneBounds, rng: np.random.Generator) -> TuningParams:
    return TuningParams(**{name: random_gene(name, bounds, rng) for name in GENE_NAMES})


def init_population(
    bounds: GeneBounds, config: GaConfig, rng: np.random.Generator
) -> List[Individual]:
    return [Individual(genes=random_genes(bounds, rng)) for _ in range(config.population_size)]


def evaluate(
    ind: Individual,
    sample: np.ndarray,
    pool: Union[WorkerPool, int, None] = None,
    repeats: int = 1,
    reference: Optional[np.ndarray] = None,
) -> Individual:
    """
    Time adaptive_partition_sort on fresh copies of sample.

    Fitness is the fastest of `repeats` runs. Only the sort call is timed;
    the copy and scratch allocation happen before the clock starts. With a
    reference, every result must match it exactly or CorrectnessError is raised.
    """
    best = math.inf
    with borrow_pool(pool) as workers:
        for _ in range(repeats):
            buf = SortBuffer.copy_of(sample)
            elapsed, _ = timed(lambda: adaptive_partition_sort(buf, ind.genes, workers))
            if reference is not None:
                assert_matches_reference(buf.primary, reference)
            best = min(best, elapsed)
    fitness = best
    logger.debug("evaluated %s -> %.6fs", format_genes(ind.genes), fitness)
    return ind.model_copy(update={"fitness": fitness})


def _tournament(
    population: Sequence[Individual], size: int, rng: np.random.Generator
) -> Individual:
    contenders = rng.choice(len(population), size=size, replace=False)
    winner = min(contenders, key=lambda i: (population[i].fitness, i))
    return population[int(winner)]


def _uniform_crossover(
    first: TuningParams, second: TuningParams, rng: np.random.Generator
) -> TuningParams:
    take_first = rng.random(len(GENE_NAMES)) < 0.5
    genes = [x if keep else y for x, y, keep in zip(first.as_list(), second.as_list(), take_first)]
    return TuningParams(**dict(zip(GENE_NAMES, genes)))


def _mutate(
    genes: TuningParams, bounds: GeneBounds, probability: float, rng: np.random.Generator
) -> TuningParams:
    values = genes.as_list()
    for index, name in enumerate(GENE_NAMES):
        if rng.random() < probability:
            values[index] = random_gene(name, bounds, rng)
    return TuningParams(**dict(zip(GENE_NAMES, values)))


def evolve(
    population: Sequence[Individual],
    bounds: GeneBounds,
    config: GaConfig,
    rng: np.random.Generator,
) -> List[Individual]:
    """
    Next generation: elites unchanged, then one child per pair of tournament winners.

    A pair recombines with recombination_probability (per-gene coin flip between
    the parents); otherwise the child is a clone of the first winner. Each child
    gene is then resampled from its bounds with mutation_probability.
    """
    if any(ind.fitness is None for ind in population):
        raise ValueError("every individual must be evaluated before evolve")

    ranked = sorted(range(len(population)), key=lambda i: (population[i].fitness, i))
    next_gen = [population[i] for i in ranked[: config.elite_count]]

    while len(next_gen) < config.population_size:
        first = _tournament(population, config.tournament_size, rng)
        second = _tournament(population, config.tournament_size, rng)
        if rng.random() < config.recombination_probability:
            child = _uniform_crossover(first.genes, second.genes, rng)
        else:
            child = first.genes
        next_gen.append(Individual(genes=_mutate(child, bounds, config.mutation_probability, rng)))
    return next_gen


def generation_stats(generation: int, population: Sequence[Individual]) -> GenerationStats:
    times = [ind.fitness for ind in population]
    best_index = min(range(len(population)), key=lambda i: (times[i], i))
    best, worst = min(times), max(times)
    # fmean can land an ulp outside [best, worst] when all times are equal
    average = min(max(statistics.fmean(times), best), worst)
    return GenerationStats(
        generation=generation,
        best_time=best,
        worst_time=worst,
        average_time=average,
        best_genes=population[best_index].genes,
    )


def run_ga_tuning(
    n: int,
    bounds: GeneBounds = DEFAULT_BOUNDS,
    config: Optional[GaConfig] = None,
    pool: Union[WorkerPool, int, None] = None,
    element_width: int = 64,
) -> Tuple[TuningParams, List[GenerationStats]]:
    """Evolve parameters for arrays of size n; returns the best genes and the trace"""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    config = config or GaConfig()
    rng = np.random.default_rng(config.rng_seed)
    sample_size = int(round(n * config.sample_fraction))
    sample = generate_dataset(
        DatasetSpec(n=sample_size, element_width=element_width, seed=config.rng_seed)
    )
    reference = np.sort(sample)
    warmup()

    trace: List[GenerationStats] = []
    best: Optional[Individual] = None
    with borrow_pool(pool) as workers:
        logger.info(
            "GA tuning n=%d (sample %d), population=%d generations=%d workers=%d",
            n, sample_size, config.population_size, config.generations, workers.workers,
        )
        population = init_population(bounds, config, rng)
        for generation in range(config.generations):
            population = [
                ind if ind.fitness is not None
                else evaluate(ind, sample, workers, config.evaluation_repeats, reference)
                for ind in population
            ]
            stats = generation_stats(generation, population)
            trace.append(stats)
            logger.info(
                "generation %d: best=%.4fs avg=%.4fs worst=%.4fs genes=%s",
                generation, stats.best_time, stats.average_time, stats.worst_time,
                format_genes(stats.best_genes),
            )
            leader = min(population, key=lambda ind: ind.fitness)
            if best is None or leader.fitness < best.fitness:
                best = leader
            if generation < config.generations - 1:
                population = evolve(population, bounds, config, rng)

    return best.genes, trace


def trace_rows(trace: Sequence[GenerationStats]) -> List[dict]:
    return [
        {
            "generation": stats.generation,
            "best_time_s": repr(float(stats.best_time)),
            "worst_time_s": repr(float(stats.worst_time)),
            "avg_time_s": repr(float(stats.average_time)),
            "best_genes": format_genes(stats.best_genes),
        }
        for stats in trace
    ]


def write_trace_csv(
    trace: Sequence[GenerationStats], path: Union[str, Path], append: bool = False
) -> Path:
    """Write (or append) per-generation stats; the header is written once per file"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not append or not path.exists() or path.stat().st_size == 0
        with open(path, "a" if append else "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=TRACE_HEADER, lineterminator="\n")
            if fresh:
                writer.writeheader()
            writer.writerows(trace_rows(trace))
    except OSError as e:
        raise ReportWriteError(path, e.strerror or str(e)) from e
    return path
