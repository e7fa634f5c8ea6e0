"""
Report emission: results JSON, results CSV, optional GA trace CSVs and a terminal table.
"""
import csv
import json
from pathlib import Path
from typing import Callable, List, Sequence, Union

import click
from tabulate import tabulate

from ..common.errors import CorrectnessError, ReportWriteError
from ..common.params import format_genes
from ..common.schemas import BenchResult
from ..tuner import write_trace_csv


RESULTS_JSON = "results.json"
RESULTS_CSV = "results.csv"

RESULTS_HEADER = [
    "n",
    "element_width",
    "params_source",
    "path",
    "evosort_s",
    "baseline_unstable_s",
    "baseline_stable_s",
    "speedup_unstable",
    "speedup_stable",
    "validated",
    "params",
]


def trace_filename(n: int) -> str:
    return f"trace_{n}.csv"


def result_row(result: BenchResult) -> dict:
    """Flat CSV row for one result; floats keep full precision"""
    return {
        "n": result.spec.n,
        "element_width": result.spec.element_width,
        "params_source": result.params_source.value,
        "path": result.path,
        "evosort_s": repr(float(result.evosort_time)),
        "baseline_unstable_s": repr(float(result.baseline_times["baseline_unstable"])),
        "baseline_stable_s": repr(float(result.baseline_times["baseline_stable"])),
        "speedup_unstable": repr(float(result.speedup["baseline_unstable"])),
        "speedup_stable": repr(float(result.speedup["baseline_stable"])),
        "validated": str(result.validated).lower(),
        "params": format_genes(result.params),
    }


def format_table(results: Sequence[BenchResult]) -> str:
    """Wall-clock times and speedups, one row per size"""
    headers = [
        "n",
        "Path",
        "EvoSort (s)",
        "Unstable (s)",
        "Stable (s)",
        "Speedup (unstable)",
        "Speedup (stable)",
    ]
    rows = [
        [
            f"{r.spec.n:,}",
            r.path,
            f"{r.evosort_time:.4f}",
            f"{r.baseline_times['baseline_unstable']:.4f}",
            f"{r.baseline_times['baseline_stable']:.4f}",
            f"{r.speedup['baseline_unstable']:.1f}x",
            f"{r.speedup['baseline_stable']:.1f}x",
        ]
        for r in results
    ]
    return tabulate(rows, headers=headers, tablefmt="grid")


def _write_json(results: Sequence[BenchResult], path: Path) -> None:
    payload = [r.model_dump(mode="json") for r in results]
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _write_csv(results: Sequence[BenchResult], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=RESULTS_HEADER, lineterminator="\n")
        writer.writeheader()
        writer.writerows(result_row(r) for r in results)


def emit_report(
    results: Sequence[BenchResult],
    out_dir: Union[str, Path],
    trace: bool = False,
    echo: Callable[[str], None] = click.echo,
) -> List[Path]:
    """
    Write results.json and results.csv under out_dir and echo the table.

    With trace set, each result carrying a GA trace also gets trace_<n>.csv.
    Unvalidated results are refused before anything is written.
    Returns the written paths.
    """
    for r in results:
        if not r.validated:
            raise CorrectnessError(f"refusing to report unvalidated result for n={r.spec.n}")

    out_dir = Path(out_dir)
    json_path = out_dir / RESULTS_JSON
    csv_path = out_dir / RESULTS_CSV
    written = []
    for path, writer in ((json_path, _write_json), (csv_path, _write_csv)):
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            writer(results, path)
        except OSError as e:
            raise ReportWriteError(path, e.strerror or str(e)) from e
        written.append(path)

    if trace:
        for r in results:
            if r.trace:
                written.append(write_trace_csv(r.trace, out_dir / trace_filename(r.spec.n)))

    if echo is not None:
        echo(format_table(results))
    return written
