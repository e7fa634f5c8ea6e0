"""Primary/scratch array pair shared by the sorting kernels"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass
class SortBuffer:
    """The array to sort in place plus a same-sized scratch area"""
    primary: np.ndarray
    scratch: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.primary.ndim != 1:
            raise ValueError(f"only 1-d arrays can be sorted, got {self.primary.ndim} dimensions")
        if not self.primary.flags.c_contiguous:
            raise ValueError("primary array must be contiguous")
        if self.scratch is None:
            self.scratch = np.empty_like(self.primary)
        if self.scratch.shape != self.primary.shape or self.scratch.dtype != self.primary.dtype:
            raise ValueError("scratch must match primary in length and dtype")

    @classmethod
    def copy_of(cls, values: np.ndarray) -> "SortBuffer":
        """Buffer over a private copy, leaving values untouched"""
        return cls(np.array(values, copy=True, order="C"))

    def __len__(self) -> int:
        return self.primary.shape[0]
