"""Exception types raised by the EvoSort library"""
from typing import Any, Optional


class EvoSortError(Exception):
    """Base class for every error EvoSort raises on purpose"""


class ParamsValidationError(EvoSortError, ValueError):
    """A tuning parameter vector is malformed or has a gene out of bounds"""


class ModelError(EvoSortError, ValueError):
    """A quadratic threshold model cannot be evaluated"""


class DatasetTooLargeError(EvoSortError):
    """A dataset would exceed the configured memory cap"""

    def __init__(self, requested_bytes: int, cap_bytes: int):
        self.requested_bytes = requested_bytes
        self.cap_bytes = cap_bytes
        super().__init__(
            f"dataset needs {requested_bytes} bytes of element data, "
            f"memory cap is {cap_bytes} bytes (raise EVOSORT_MEMORY_CAP_BYTES to allow it)"
        )


class CorrectnessError(EvoSortError):
    """A sort result differs from the reference sort"""

    def __init__(
        self,
        message: str,
        index: Optional[int] = None,
        expected: Any = None,
        actual: Any = None,
    ):
        self.index = index
        self.expected = expected
        self.actual = actual
        super().__init__(message)


class ReportWriteError(EvoSortError, OSError):
    """A report file could not be written"""

    def __init__(self, path, reason: str):
        self.path = path
        super().__init__(f"cannot write {path}: {reason}")


class PlotUnavailableError(EvoSortError):
    """Plots were requested but matplotlib is not installed"""
