"""Input generators shared by the sorting tests"""
import numpy as np


# Patterns every sorting path is checked against
PATTERNS = ("random", "extremes", "all_equal", "sorted", "reverse")


def make_array(pattern: str, n: int, dtype, seed: int) -> np.ndarray:
    """Test input of length n following pattern, covering the dtype's full range"""
    dtype = np.dtype(dtype)
    rng = np.random.default_rng(seed)
    if dtype.kind == "f":
        base = rng.uniform(-1e12, 1e12, size=n).astype(dtype)
        extremes = np.array([-np.inf, np.finfo(dtype).min, -0.0, 0.0, 1.5, np.finfo(dtype).max,
                             np.inf], dtype=dtype)
    else:
        info = np.iinfo(dtype)
        base = rng.integers(info.min, info.max, size=n, dtype=dtype, endpoint=True)
        extremes = np.array([info.min, info.min + 1, -1, 0, 1, info.max - 1, info.max],
                            dtype=dtype)
    if pattern == "random":
        return base
    if pattern == "extremes":
        return rng.choice(extremes, size=n)
    if pattern == "all_equal":
        return np.full(n, extremes[int(rng.integers(len(extremes)))], dtype=dtype)
    if pattern == "sorted":
        return np.sort(base)
    if pattern == "reverse":
        return np.sort(base)[::-1].copy()
    raise ValueError(pattern)


