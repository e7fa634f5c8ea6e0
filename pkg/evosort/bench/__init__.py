"""Benchmark harness: the master pipeline and its reports"""
from ..common.datagen import generate_dataset
from .pipeline import BASELINES, compute_speedups, run_pipeline, run_size
from .plots import plot_convergence, plot_threshold_trends, plot_timings, write_plots
from .reports import emit_report, format_table

__all__ = [
    "BASELINES",
    "compute_speedups",
    "generate_dataset",
    "run_pipeline",
    "run_size",
    "emit_report",
    "format_table",
    "plot_convergence",
    "plot_threshold_trends",
    "plot_timings",
    "write_plots",
]
