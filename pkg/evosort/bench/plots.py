"""
PNG figures for tuning and benchmark runs.

Needs the optional ``plot`` extra (matplotlib). Figures are rendered with the
Agg backend, so no display is required. Threshold trends show the raw model
values, before rounding and clamping.
"""
import logging
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from ..common.errors import PlotUnavailableError, ReportWriteError
from ..common.schemas import BenchResult, GenerationStats
from ..model import BUILTIN_MODELS, SymbolicParamSet, vertex


logger = logging.getLogger(__name__)

CONVERGENCE_PNG = "convergence.png"
TIMING_PNG = "timing.png"
THRESHOLDS_PNG = "thresholds.png"

# log10(n) span drawn for every threshold model
TREND_RANGE = (6.0, 10.5)


def convergence_filename(n: int) -> str:
    return f"convergence_{n}.png"


def _pyplot():
    try:
        import matplotlib
    except ImportError as e:
        raise PlotUnavailableError(
            "plotting needs matplotlib; install it with pip install 'evosort[plot]'"
        ) from e
    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path: Path) -> Path:
    plt = _pyplot()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, dpi=150, bbox_inches="tight")
    except OSError as e:
        raise ReportWriteError(path, e.strerror or str(e)) from e
    finally:
        plt.close(fig)
    logger.debug("wrote %s", path)
    return path


def plot_convergence(
    trace: Sequence[GenerationStats], path: Union[str, Path], title: str = "GA convergence"
) -> Path:
    """Best, average and worst fitness by generation"""
    plt = _pyplot()
    generations = [s.generation for s in trace]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(generations, [s.best_time for s in trace], marker="o", label="best")
    ax.plot(generations, [s.average_time for s in trace], marker="s", label="average")
    ax.plot(generations, [s.worst_time for s in trace], marker="^", label="worst")
    ax.set_xlabel("generation")
    ax.set_ylabel("sort time (s)")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _save(fig, Path(path))


def plot_timings(results: Sequence[BenchResult], path: Union[str, Path]) -> Path:
    """Grouped bars of EvoSort and both baselines for every size"""
    plt = _pyplot()
    labels = [f"{r.spec.n:,}" for r in results]
    series = {
        "EvoSort": [r.evosort_time for r in results],
        "unstable baseline": [r.baseline_times["baseline_unstable"] for r in results],
        "stable baseline": [r.baseline_times["baseline_stable"] for r in results],
    }
    x = np.arange(len(results))
    width = 0.8 / len(series)
    fig, ax = plt.subplots(figsize=(max(6, 1.8 * len(results)), 4.5))
    for offset, (name, times) in enumerate(series.items()):
        ax.bar(x + (offset - 1) * width, times, width, label=name)
    ax.set_xticks(x)
    ax.set_xticklabels(labels)
    ax.set_xlabel("n")
    ax.set_ylabel("wall-clock time (s)")
    ax.set_title("EvoSort vs. baselines")
    ax.grid(True, axis="y", alpha=0.3)
    ax.legend()
    return _save(fig, Path(path))


def plot_threshold_trends(
    path: Union[str, Path],
    sizes: Sequence[int] = (),
    models: SymbolicParamSet = BUILTIN_MODELS,
) -> Path:
    """
    One panel per threshold model: the quadratic over log10(n), its vertex,
    and the raw predicted value at each of `sizes`.
    """
    plt = _pyplot()
    xs = np.linspace(*TREND_RANGE, 200)
    fig, axes = plt.subplots(2, 2, figsize=(11, 8))
    for ax, model in zip(axes.flat, models.models()):
        ax.plot(xs, [model.value_at(x) for x in xs], label="model")
        v = vertex(model)
        ax.axvline(v.x, color="grey", linestyle="--", label=f"{v.kind.value} x*={v.x:.3f}")
        points = [np.log10(n) for n in sizes if n >= 1]
        if points:
            ax.scatter(points, [model.value_at(x) for x in points], color="red", zorder=3,
                       label="predicted")
        ax.set_title(model.target)
        ax.set_xlabel("log10(n)")
        ax.set_ylabel("elements")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize="small")
    fig.tight_layout()
    return _save(fig, Path(path))


def write_plots(results: Sequence[BenchResult], out_dir: Union[str, Path]) -> List[Path]:
    """Timing bars, threshold trends and one convergence plot per GA-tuned size"""
    out_dir = Path(out_dir)
    written = [
        plot_timings(results, out_dir / TIMING_PNG),
        plot_threshold_trends(out_dir / THRESHOLDS_PNG, [r.spec.n for r in results]),
    ]
    for r in results:
        if r.trace:
            written.append(
                plot_convergence(r.trace, out_dir / convergence_filename(r.spec.n),
                                 title=f"GA convergence, n={r.spec.n:,}")
            )
    return written
