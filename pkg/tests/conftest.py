"""Shared fixtures for the EvoSort test suite"""
import pytest

from evosort.common.pool import worker_pool
from evosort.common.settings import get_settings
from evosort.sorters import warmup


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    """JIT-compile every kernel once per session"""
    warmup()


@pytest.fixture(scope="module")
def pool():
    with worker_pool(4) as workers:
        yield workers


@pytest.fixture
def clean_settings(monkeypatch):
    """Fresh Settings for each test, re-read after the test's env changes"""
    for name in ("EVOSORT_WORKERS", "EVOSORT_SEED", "EVOSORT_OUT_DIR",
                 "EVOSORT_MEMORY_CAP_BYTES", "EVOSORT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield monkeypatch
    get_settings.cache_clear()
