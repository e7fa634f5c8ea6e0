"""Tests for data generation, the master pipeline and report emission"""
import csv
import json
import sys

import numpy as np
import pytest

from evosort.bench import (
    compute_speedups,
    emit_report,
    format_table,
    plot_convergence,
    plot_threshold_trends,
    plot_timings,
    run_pipeline,
    write_plots,
)
from evosort.bench.reports import RESULTS_HEADER
from evosort.common.datagen import generate_dataset
from evosort.common.errors import (
    CorrectnessError,
    DatasetTooLargeError,
    PlotUnavailableError,
    ReportWriteError,
)
from evosort.common.params import params_from_obj
from evosort.common.schemas import BenchConfig, DatasetSpec, GaConfig, ParamsSource, TuningParams


TUNED_BEST = params_from_obj([3075, 31291, 4, 99574, 1418])


class TestGenerateDataset:
    def test_empty(self):
        data = generate_dataset(DatasetSpec(n=0))
        assert data.shape == (0,)
        assert data.dtype == np.int64

    def test_same_seed_same_array(self):
        spec = DatasetSpec(n=10_000, seed=123)
        np.testing.assert_array_equal(generate_dataset(spec), generate_dataset(spec))

    def test_different_seed_differs(self):
        a = generate_dataset(DatasetSpec(n=10_000, seed=1))
        b = generate_dataset(DatasetSpec(n=10_000, seed=2))
        assert not np.array_equal(a, b)

    def test_prefix_stable_across_blocks(self):
        long = generate_dataset(DatasetSpec(n=(1 << 22) + 10, seed=5))
        short = generate_dataset(DatasetSpec(n=1000, seed=5))
        np.testing.assert_array_equal(long[:1000], short)

    def test_uniform_statistics(self):
        data = generate_dataset(DatasetSpec(n=10**6, seed=42))
        assert data.min() >= -(10**9)
        assert data.max() <= 10**9
        sigma = (2 * 10**9 + 1) / np.sqrt(12)
        assert abs(data.mean()) < 3 * sigma / np.sqrt(data.size)

    def test_int32_width(self):
        data = generate_dataset(DatasetSpec(n=1000, element_width=32, seed=3))
        assert data.dtype == np.int32
        assert data.min() >= -(10**9) and data.max() <= 10**9

    def test_small_range_hits_both_ends(self):
        data = generate_dataset(DatasetSpec(n=10_000, low=-2, high=2, seed=0))
        assert set(np.unique(data)) == {-2, -1, 0, 1, 2}

    def test_memory_cap(self):
        with pytest.raises(DatasetTooLargeError, match="8000 bytes"):
            generate_dataset(DatasetSpec(n=1000), memory_cap_bytes=100)

    def test_invalid_spec(self):
        with pytest.raises(ValueError):
            DatasetSpec(n=10, low=5, high=5)
        with pytest.raises(ValueError):
            DatasetSpec(n=-1)


class TestSpeedups:
    def test_ratio(self):
        assert compute_speedups(10, 0.5, {"baseline_stable": 2.0}) == {"baseline_stable": 4.0}

    def test_empty_dataset_is_one(self):
        assert compute_speedups(0, 1e-9, {"a": 5e-9, "b": 1e-9}) == {"a": 1.0, "b": 1.0}


class TestRunPipeline:
    def test_manual_tuned_parameters(self):
        config = BenchConfig(manual_params=TUNED_BEST, workers=2)
        [result] = run_pipeline([100_000], ParamsSource.MANUAL, config)
        assert result.validated
        assert result.params == TUNED_BEST
        assert result.params_source is ParamsSource.MANUAL
        assert result.path == "radix_sort"
        assert set(result.baseline_times) == {"baseline_unstable", "baseline_stable"}
        for name, t in result.baseline_times.items():
            expected = t / result.evosort_time
            assert abs(result.speedup[name] - expected) <= 1e-9 * result.speedup[name]

    def test_empty_size(self):
        [result] = run_pipeline([0], "symbolic", BenchConfig(workers=1))
        assert result.validated
        assert result.path == "host_standard_sort"
        assert result.speedup == {"baseline_unstable": 1.0, "baseline_stable": 1.0}

    def test_sizes_in_order_with_own_seeds(self):
        results = run_pipeline([2000, 150_000, 2000], "symbolic", BenchConfig(seed=7, workers=2))
        assert [r.spec.n for r in results] == [2000, 150_000, 2000]
        assert [r.spec.seed for r in results] == [7, 8, 9]
        assert all(r.params_source is ParamsSource.SYMBOLIC for r in results)

    def test_ga_mode_records_trace(self):
        config = BenchConfig(
            workers=2, ga=GaConfig(population_size=4, generations=2, sample_fraction=0.5)
        )
        [result] = run_pipeline([20_000], "ga", config)
        assert result.validated
        assert len(result.trace) == 2
        assert "trace" not in result.model_dump()

    def test_manual_without_params(self):
        with pytest.raises(ValueError, match="manual mode needs params"):
            run_pipeline([1000], "manual", BenchConfig())

    def test_empty_sizes(self):
        with pytest.raises(ValueError):
            run_pipeline([], "symbolic")

    def test_memory_cap_refusal(self):
        with pytest.raises(DatasetTooLargeError):
            run_pipeline([10_000], "symbolic", BenchConfig(memory_cap_bytes=1000, workers=1))

    def test_int32(self):
        [result] = run_pipeline([200_000], "symbolic", BenchConfig(element_width=32, workers=2))
        assert result.validated
        assert result.spec.element_width == 32

    def test_seed_plus_index_must_fit_64_bits(self):
        config = BenchConfig(seed=2**64 - 1, workers=1)
        with pytest.raises(ValueError, match=r"2\*\*64"):
            run_pipeline([10, 20], "symbolic", config)


@pytest.fixture(scope="module")
def results():
    config = BenchConfig(
        workers=2, ga=GaConfig(population_size=4, generations=2, sample_fraction=0.5)
    )
    return run_pipeline([5000], "ga", config)


class TestEmitReport:
    def test_one_result(self, results, tmp_path):
        echoed = []
        written = emit_report(results, tmp_path, echo=echoed.append)
        assert [p.name for p in written] == ["results.json", "results.csv"]

        payload = json.loads((tmp_path / "results.json").read_text())
        assert len(payload) == 1
        assert params_from_obj(payload[0]["params"]) == results[0].params
        assert "trace" not in payload[0]

        with open(tmp_path / "results.csv", newline="") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 1
        assert list(rows[0]) == RESULTS_HEADER
        assert rows[0]["n"] == "5000"
        assert rows[0]["validated"] == "true"
        assert float(rows[0]["evosort_s"]) == results[0].evosort_time
        assert json.loads(rows[0]["params"]) == results[0].params.as_list()
        assert "EvoSort (s)" in echoed[0]

    def test_trace_files(self, results, tmp_path):
        written = emit_report(results, tmp_path, trace=True, echo=None)
        trace_path = tmp_path / "trace_5000.csv"
        assert trace_path in written
        lines = trace_path.read_text().splitlines()
        assert lines[0] == "generation,best_time_s,worst_time_s,avg_time_s,best_genes"
        assert len(lines) == 3

    def test_unvalidated_result_refused(self, results, tmp_path):
        bad = results[0].model_copy(update={"validated": False})
        with pytest.raises(CorrectnessError):
            emit_report([bad], tmp_path / "out", echo=None)
        assert not (tmp_path / "out").exists()

    def test_unwritable_path(self, results, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        with pytest.raises(ReportWriteError, match="blocker"):
            emit_report(results, blocker, echo=None)

    def test_table_columns(self, results):
        table = format_table(results)
        for column in ("n", "EvoSort (s)", "Stable (s)", "Speedup (stable)"):
            assert column in table
        assert "5,000" in table
        assert f"{results[0].speedup['baseline_stable']:.1f}x" in table


PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@pytest.fixture
def matplotlib():
    return pytest.importorskip("matplotlib")


class TestPlots:
    def test_write_plots(self, matplotlib, results, tmp_path):
        written = write_plots(results, tmp_path)
        assert [p.name for p in written] == [
            "timing.png", "thresholds.png", "convergence_5000.png"
        ]
        for path in written:
            assert path.read_bytes()[:8] == PNG_MAGIC

    def test_threshold_trends_without_sizes(self, matplotlib, tmp_path):
        path = plot_threshold_trends(tmp_path / "trends.png")
        assert path.read_bytes()[:8] == PNG_MAGIC

    def test_convergence(self, matplotlib, results, tmp_path):
        path = plot_convergence(results[0].trace, tmp_path / "nested" / "ga.png")
        assert path.read_bytes()[:8] == PNG_MAGIC

    def test_unwritable_path(self, matplotlib, results, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        with pytest.raises(ReportWriteError, match="blocker"):
            plot_timings(results, blocker / "timing.png")

    def test_missing_matplotlib(self, results, tmp_path, monkeypatch):
        monkeypatch.setitem(sys.modules, "matplotlib", None)
        with pytest.raises(PlotUnavailableError, match=r"evosort\[plot\]"):
            write_plots(results, tmp_path)
