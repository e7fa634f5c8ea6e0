"""
Long-running acceptance checks at n = 10**7.
Deselected by default; run with: pytest -m slow
"""
import statistics

import pytest

from evosort.bench import run_pipeline
from evosort.common.schemas import BenchConfig, GaConfig
from evosort.common.settings import detect_workers
from evosort.tuner import run_ga_tuning


TEN_MILLION = 10**7

pytestmark = pytest.mark.slow


def test_ga_average_halves_by_generation_two():
    """Average fitness at generation 2 drops below half of generation 0 for most seeds"""
    improved = 0
    for seed in range(5):
        config = GaConfig(generations=3, rng_seed=seed)
        _, trace = run_ga_tuning(TEN_MILLION, config=config)
        if trace[2].average_time < 0.5 * trace[0].average_time:
            improved += 1
    assert improved >= 4


@pytest.mark.skipif(detect_workers() < 4, reason="needs at least 4 hardware threads")
def test_symbolic_speedup_over_stable_baseline():
    speedups = []
    for run in range(5):
        [result] = run_pipeline([TEN_MILLION], "symbolic", BenchConfig(seed=42 + run))
        assert result.validated
        speedups.append(result.speedup["baseline_stable"])
    assert statistics.median(speedups) >= 1.5
