"""
EvoSort command-line interface.
Subcommands: tune (GA), params (symbolic model), sort (binary file), bench (full pipeline).
"""
import functools
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Tuple

import click
import numpy as np
from pydantic import ValidationError
from tabulate import tabulate

from ..bench import emit_report, plot_convergence, run_pipeline, write_plots
from ..bench.plots import CONVERGENCE_PNG
from ..dispatch import adaptive_partition_sort
from ..model import symbolic_params, threshold_table, vertex_table
from ..sorters import SortBuffer, warmup
from ..tuner import run_ga_tuning, write_trace_csv
from .datagen import element_dtype
from .errors import EvoSortError
from .params import format_genes, load_params, params_to_obj, save_params
from .pool import worker_pool
from .schemas import SEED_LIMIT, BenchConfig, GaConfig, ParamsSource
from .settings import get_settings
from .utils import assert_matches_reference, timed


def setup_logging(verbosity: int) -> None:
    """Settings log_level is the base; each -v lowers it one step (INFO, then DEBUG)"""
    base = logging.getLevelName(get_settings().log_level.upper())
    if not isinstance(base, int):
        base = logging.WARNING
    level = base
    if verbosity >= 2:
        level = min(base, logging.DEBUG)
    elif verbosity == 1:
        level = min(base, logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )


def handle_errors(fn):
    """Report EvoSortError and invalid settings as a red cross on stderr, then exit 1"""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except EvoSortError as e:
            click.echo(click.style(f"✗ {e}", fg="red"), err=True)
            sys.exit(1)
        except ValidationError as e:
            problem = e.errors()[0]
            where = ".".join(str(part) for part in problem["loc"])
            click.echo(click.style(f"✗ {where}: {problem['msg']}", fg="red"), err=True)
            sys.exit(1)

    return wrapper


def wire_dtype(element_width: int) -> np.dtype:
    """Little-endian on-disk dtype for the binary array format"""
    return np.dtype(f"<i{element_dtype(element_width).itemsize}")


def ga_options(fn):
    """GA flags shared by tune and bench"""
    options = [
        click.option("--population", type=click.IntRange(min=2), default=30, show_default=True,
                     help="GA population size"),
        click.option("--generations", type=click.IntRange(min=1), default=10, show_default=True,
                     help="Number of GA generations"),
        click.option("--sample-fraction", type=click.FloatRange(0.0, 1.0, min_open=True),
                     default=1.0, show_default=True,
                     help="Fraction of n sampled for fitness evaluation"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def common_options(fn):
    """Seed, workers, repeats and element width"""
    options = [
        click.option("--seed", type=click.IntRange(min=0, max=SEED_LIMIT - 1), default=None,
                     help="RNG seed (default: EVOSORT_SEED or 42)"),
        click.option("--workers", type=click.IntRange(min=1), envvar="EVOSORT_WORKERS",
                     default=None, help="Worker threads (default: hardware parallelism)"),
        click.option("--repeats", type=click.IntRange(min=1), default=1, show_default=True,
                     help="Timed runs per measurement; the fastest is kept"),
        click.option("--element-width", type=click.Choice(["32", "64"]), default="64",
                     show_default=True, help="Element width in bits"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@click.group()
@click.option("-v", "--verbose", count=True, help="Increase log verbosity (-v INFO, -vv DEBUG)")
@handle_errors
def cli(verbose: int):
    """EvoSort - GA-tuned hybrid parallel sorting"""
    setup_logging(verbose)


@cli.command()
@click.option("--size", type=click.IntRange(min=0), required=True, help="Array size to tune for")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Output directory (default: EVOSORT_OUT_DIR or ./results)")
@click.option("--append/--overwrite", default=True, show_default=True,
              help="Append generations to an existing trace.csv or start it over")
@click.option("--plot", is_flag=True, help="Also write convergence.png (needs the plot extra)")
@common_options
@ga_options
@handle_errors
def tune(size: int, out: Optional[str], append: bool, plot: bool, seed: Optional[int],
         workers: Optional[int], repeats: int, element_width: str, population: int,
         generations: int, sample_fraction: float):
    """Run the GA auto-tuner and write params.json and trace.csv"""
    settings = get_settings()
    out_dir = Path(out) if out else settings.out_dir
    config = GaConfig(
        population_size=population,
        generations=generations,
        evaluation_repeats=repeats,
        rng_seed=settings.seed if seed is None else seed,
        sample_fraction=sample_fraction,
    )
    with worker_pool(workers) as pool:
        best, trace = run_ga_tuning(size, config=config, pool=pool,
                                    element_width=int(element_width))

    params_path = save_params(best, out_dir / "params.json")
    trace_path = write_trace_csv(trace, out_dir / "trace.csv", append=append)

    rows = [
        [s.generation, f"{s.best_time:.6f}", f"{s.average_time:.6f}", f"{s.worst_time:.6f}",
         format_genes(s.best_genes)]
        for s in trace
    ]
    click.echo(tabulate(rows, headers=["Gen", "Best (s)", "Avg (s)", "Worst (s)", "Best genes"],
                        tablefmt="grid"))
    click.echo(click.style(f"✓ Best parameters {format_genes(best)}", fg="green"))
    click.echo(f"  params: {params_path}")
    click.echo(f"  trace:  {trace_path}")
    if plot:
        plot_path = plot_convergence(trace, out_dir / CONVERGENCE_PNG,
                                     title=f"GA convergence, n={size:,}")
        click.echo(f"  plot:   {plot_path}")


@cli.command()
@click.option("--size", "sizes", type=click.IntRange(min=1), multiple=True,
              help="Array size; repeat for a trend table")
@click.option("--vertices", is_flag=True, help="Show the extremum of each threshold model")
@handle_errors
def params(sizes: Tuple[int, ...], vertices: bool):
    """Predict tuning parameters from the closed-form models"""
    if not sizes and not vertices:
        raise click.UsageError("give at least one --size or --vertices")

    if len(sizes) == 1:
        click.echo(json.dumps(params_to_obj(symbolic_params(sizes[0])), indent=2))
    elif sizes:
        click.echo(tabulate(threshold_table(sizes), headers="keys", tablefmt="grid"))

    if vertices:
        click.echo(tabulate(vertex_table(), headers="keys", tablefmt="grid"))


@cli.command(name="sort")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.argument("output_path", metavar="OUTPUT", type=click.Path(dir_okay=False))
@click.option("--element-width", type=click.Choice(["32", "64"]), default="64",
              show_default=True, help="Element width in bits")
@click.option("--params", "params_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Params JSON (default: symbolic model for the array size)")
@click.option("--workers", type=click.IntRange(min=1), envvar="EVOSORT_WORKERS", default=None,
              help="Worker threads (default: hardware parallelism)")
@handle_errors
def sort_file(input_path: str, output_path: str, element_width: str,
              params_path: Optional[str], workers: Optional[int]):
    """Sort a raw little-endian integer file into OUTPUT"""
    dtype = wire_dtype(int(element_width))
    nbytes = os.path.getsize(input_path)
    if nbytes % dtype.itemsize:
        raise click.BadParameter(
            f"{nbytes} bytes is not a multiple of {dtype.itemsize}-byte elements",
            param_hint="INPUT",
        )

    data = np.fromfile(input_path, dtype=dtype).astype(element_dtype(int(element_width)))
    n = data.shape[0]
    params = load_params(params_path) if params_path else symbolic_params(max(n, 1))

    reference = np.sort(data)
    warmup()
    buf = SortBuffer(data)
    with worker_pool(workers) as pool:
        elapsed, decision = timed(lambda: adaptive_partition_sort(buf, params, pool))
    assert_matches_reference(buf.primary, reference)

    Path(output_path).parent.mkdir(parents=True, exist_ok=True)
    buf.primary.astype(dtype).tofile(output_path)
    click.echo(click.style(
        f"✓ Sorted {n:,} elements via {decision.chosen_path.value} in {elapsed:.4f}s",
        fg="green",
    ))
    click.echo(f"  params: {format_genes(params)}")


@cli.command()
@click.option("--size", "sizes", type=click.IntRange(min=0), multiple=True, required=True,
              help="Array size; repeat to benchmark several sizes")
@click.option("--mode", type=click.Choice([m.value for m in ParamsSource]), default="symbolic",
              show_default=True, help="Where the tuning parameters come from")
@click.option("--params", "params_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Params JSON for --mode manual")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Output directory (default: EVOSORT_OUT_DIR or ./results)")
@click.option("--trace", is_flag=True, help="Write trace_<n>.csv for GA runs")
@click.option("--plot", is_flag=True,
              help="Write timing, threshold-trend and convergence PNGs (needs the plot extra)")
@common_options
@ga_options
@handle_errors
def bench(sizes: Tuple[int, ...], mode: str, params_path: Optional[str], out: Optional[str],
          trace: bool, plot: bool, seed: Optional[int], workers: Optional[int], repeats: int,
          element_width: str, population: int, generations: int, sample_fraction: float):
    """Run the full pipeline: params, data, sort, validation, baselines, report"""
    settings = get_settings()
    if mode == ParamsSource.MANUAL.value and not params_path:
        raise click.UsageError("--mode manual requires --params")
    seed = settings.seed if seed is None else seed
    if seed + len(sizes) > SEED_LIMIT:
        raise click.BadParameter(
            f"seed + size index must stay below 2**64 (at most {SEED_LIMIT - len(sizes)})",
            param_hint="--seed",
        )
    config = BenchConfig(
        seed=seed,
        element_width=int(element_width),
        repeats=repeats,
        workers=workers,
        memory_cap_bytes=settings.memory_cap_bytes,
        ga=GaConfig(
            population_size=population,
            generations=generations,
            evaluation_repeats=repeats,
            rng_seed=seed,
            sample_fraction=sample_fraction,
        ),
        manual_params=load_params(params_path) if params_path else None,
    )
    results = run_pipeline(list(sizes), mode, config)
    out_dir = Path(out) if out else settings.out_dir
    written = emit_report(results, out_dir, trace=trace)
    if plot:
        written += write_plots(results, out_dir)
    click.echo(click.style(f"✓ {len(results)} result(s) validated", fg="green"))
    for path in written:
        click.echo(f"  {path}")


if __name__ == "__main__":
    cli()
