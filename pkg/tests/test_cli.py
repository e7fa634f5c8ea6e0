"""Tests for the evosort command-line interface"""
import json

import numpy as np
import pytest
from click.testing import CliRunner

from evosort.common.cli import cli
from evosort.common.params import load_params, params_to_obj
from evosort.model import symbolic_params


TIMING_FIELDS = ("evosort_time", "baseline_times", "speedup")


@pytest.fixture
def runner(clean_settings):
    return CliRunner()


def without_timings(path):
    payload = json.loads(path.read_text())
    return [{k: v for k, v in row.items() if k not in TIMING_FIELDS} for row in payload]


class TestParamsCommand:
    def test_single_size_prints_json(self, runner):
        result = runner.invoke(cli, ["params", "--size", "10000000"])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output) == params_to_obj(symbolic_params(10**7))

    def test_several_sizes_print_table(self, runner):
        result = runner.invoke(cli, ["params", "--size", "100000", "--size", "10000000"])
        assert result.exit_code == 0, result.output
        assert "insertion_threshold" in result.output
        assert "4995" in result.output

    def test_vertices(self, runner):
        result = runner.invoke(cli, ["params", "--vertices"])
        assert result.exit_code == 0, result.output
        assert "minimum" in result.output
        assert "maximum" in result.output

    def test_needs_an_option(self, runner):
        result = runner.invoke(cli, ["params"])
        assert result.exit_code == 2


class TestSortCommand:
    @pytest.mark.parametrize("width,dtype", [("32", "<i4"), ("64", "<i8")])
    def test_sorts_file_and_keeps_input(self, runner, tmp_path, width, dtype):
        values = np.random.default_rng(0).integers(-(10**9), 10**9, size=150_000).astype(dtype)
        src = tmp_path / "in.bin"
        dst = tmp_path / "out.bin"
        values.tofile(src)
        result = runner.invoke(
            cli, ["sort", str(src), str(dst), "--element-width", width, "--workers", "2"]
        )
        assert result.exit_code == 0, result.output
        assert "✓ Sorted 150,000 elements" in result.output
        np.testing.assert_array_equal(np.fromfile(dst, dtype=dtype), np.sort(values))
        np.testing.assert_array_equal(np.fromfile(src, dtype=dtype), values)

    def test_manual_params(self, runner, tmp_path):
        params = tmp_path / "params.json"
        params.write_text(json.dumps([3075, 31291, 3, 1024, 1418]))
        values = np.arange(5000, 0, -1, dtype="<i8")
        values.tofile(tmp_path / "in.bin")
        result = runner.invoke(
            cli,
            ["sort", str(tmp_path / "in.bin"), str(tmp_path / "out.bin"), "--params", str(params)],
        )
        assert result.exit_code == 0, result.output
        assert "refined_mergesort" in result.output
        np.testing.assert_array_equal(np.fromfile(tmp_path / "out.bin", dtype="<i8"),
                                      np.arange(1, 5001))

    def test_rejects_truncated_file(self, runner, tmp_path):
        src = tmp_path / "in.bin"
        src.write_bytes(b"\x00" * 7)
        result = runner.invoke(cli, ["sort", str(src), str(tmp_path / "out.bin")])
        assert result.exit_code == 2
        assert "not a multiple" in result.output

    def test_empty_file(self, runner, tmp_path):
        src = tmp_path / "in.bin"
        src.write_bytes(b"")
        result = runner.invoke(cli, ["sort", str(src), str(tmp_path / "out.bin")])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "out.bin").read_bytes() == b""


class TestTuneCommand:
    def test_writes_params_and_trace(self, runner, tmp_path):
        result = runner.invoke(
            cli,
            [
                "tune", "--size", "20000", "--population", "4", "--generations", "2",
                "--sample-fraction", "0.5", "--workers", "2", "--out", str(tmp_path),
            ],
        )
        assert result.exit_code == 0, result.output
        assert "✓ Best parameters" in result.output
        load_params(tmp_path / "params.json")
        lines = (tmp_path / "trace.csv").read_text().splitlines()
        assert lines[0] == "generation,best_time_s,worst_time_s,avg_time_s,best_genes"
        assert len(lines) == 3

    def tune_args(self, tmp_path, *extra):
        return [
            "tune", "--size", "5000", "--population", "3", "--generations", "2",
            "--workers", "2", "--out", str(tmp_path), *extra,
        ]

    def test_trace_is_appended_across_runs(self, runner, tmp_path):
        for _ in range(2):
            result = runner.invoke(cli, self.tune_args(tmp_path))
            assert result.exit_code == 0, result.output
        lines = (tmp_path / "trace.csv").read_text().splitlines()
        assert lines.count("generation,best_time_s,worst_time_s,avg_time_s,best_genes") == 1
        assert len(lines) == 5

    def test_overwrite_starts_the_trace_over(self, runner, tmp_path):
        runner.invoke(cli, self.tune_args(tmp_path))
        result = runner.invoke(cli, self.tune_args(tmp_path, "--overwrite"))
        assert result.exit_code == 0, result.output
        assert len((tmp_path / "trace.csv").read_text().splitlines()) == 3

    def test_plot(self, runner, tmp_path):
        pytest.importorskip("matplotlib")
        result = runner.invoke(cli, self.tune_args(tmp_path, "--plot"))
        assert result.exit_code == 0, result.output
        assert (tmp_path / "convergence.png").read_bytes()[:4] == b"\x89PNG"

    def test_invalid_settings_reported(self, runner, clean_settings, tmp_path):
        clean_settings.setenv("EVOSORT_SEED", str(2**64))
        result = runner.invoke(cli, self.tune_args(tmp_path))
        assert result.exit_code == 1
        assert "✗ seed:" in result.output


class TestBenchCommand:
    def test_symbolic_run_is_deterministic(self, runner, tmp_path):
        args = ["bench", "--mode", "symbolic", "--seed", "42", "--size", "1000000",
                "--workers", "2"]
        first = runner.invoke(cli, args + ["--out", str(tmp_path / "a")])
        second = runner.invoke(cli, args + ["--out", str(tmp_path / "b")])
        assert first.exit_code == 0, first.output
        assert second.exit_code == 0, second.output
        a = without_timings(tmp_path / "a" / "results.json")
        b = without_timings(tmp_path / "b" / "results.json")
        assert a == b
        assert a[0]["validated"] is True
        assert a[0]["spec"] == {
            "n": 1000000, "element_width": 64, "low": -(10**9), "high": 10**9, "seed": 42,
        }

    def test_manual_needs_params(self, runner, tmp_path):
        result = runner.invoke(cli, ["bench", "--mode", "manual", "--size", "1000",
                                     "--out", str(tmp_path)])
        assert result.exit_code == 2

    def test_invalid_params_file(self, runner, tmp_path):
        params = tmp_path / "params.json"
        params.write_text(json.dumps([0, 31291, 4, 99574, 1418]))
        result = runner.invoke(
            cli,
            ["bench", "--mode", "manual", "--params", str(params), "--size", "1000",
             "--out", str(tmp_path)],
        )
        assert result.exit_code == 1
        assert "✗ insertion_threshold below minimum 1" in result.output

    def test_manual_with_trace(self, runner, tmp_path):
        params = tmp_path / "params.json"
        params.write_text(json.dumps([3075, 31291, 4, 99574, 1418]))
        result = runner.invoke(
            cli,
            ["bench", "--mode", "manual", "--params", str(params), "--size", "100000",
             "--size", "1000", "--out", str(tmp_path / "out"), "--trace", "--workers", "2"],
        )
        assert result.exit_code == 0, result.output
        assert "✓ 2 result(s) validated" in result.output
        payload = json.loads((tmp_path / "out" / "results.json").read_text())
        assert [row["params_source"] for row in payload] == ["manual", "manual"]
        assert not list((tmp_path / "out").glob("trace_*.csv"))

    def test_seed_too_large_for_several_sizes(self, runner, tmp_path):
        result = runner.invoke(
            cli,
            ["bench", "--size", "10", "--size", "20", "--seed", str(2**64 - 1),
             "--out", str(tmp_path)],
        )
        assert result.exit_code == 2
        assert "at most 18446744073709551614" in result.output
        assert not (tmp_path / "results.json").exists()

    def test_plot(self, runner, tmp_path):
        pytest.importorskip("matplotlib")
        result = runner.invoke(
            cli, ["bench", "--size", "5000", "--workers", "2", "--plot", "--out", str(tmp_path)]
        )
        assert result.exit_code == 0, result.output
        assert (tmp_path / "timing.png").exists()
        assert (tmp_path / "thresholds.png").exists()

    def test_workers_env_var(self, runner, tmp_path, clean_settings):
        clean_settings.setenv("EVOSORT_WORKERS", "3")
        result = runner.invoke(cli, ["bench", "--size", "5000", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "results.csv").exists()
