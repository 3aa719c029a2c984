"""Gray-level histograms.

Levels are indexed 0..255. Counts are kept as exact integers; the
probability vector is derived from them on construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyHistogramError
from .imageio import LEVELS, GrayImage


@dataclass(frozen=True, eq=False)
class Histogram:
    counts: np.ndarray
    total: int
    probabilities: np.ndarray

    @property
    def levels(self) -> int:
        return LEVELS

    def occupied(self) -> np.ndarray:
        """Indices of the non-empty bins."""
        return np.flatnonzero(self.counts)

    def mean(self) -> float:
        return float(np.dot(np.arange(LEVELS), self.counts)) / self.total

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    __hash__ = None


def from_counts(counts) -> Histogram:
    """Histogram from a length-256 vector of non-negative integer counts."""
    c = np.asarray(counts)
    if c.shape != (LEVELS,):
        raise ValueError(f"expected {LEVELS} counts, got shape {c.shape}")
    if np.any(c < 0):
        raise ValueError("counts must be non-negative")
    if not np.all(np.equal(np.mod(c, 1), 0)):
        raise ValueError("counts must be integers")
    c = c.astype(np.int64)
    total = int(c.sum())
    if total == 0:
        raise EmptyHistogramError("histogram has no counts")
    c.setflags(write=False)
    p = c / total
    p.setflags(write=False)
    return Histogram(counts=c, total=total, probabilities=p)


def build_histogram(image: GrayImage) -> Histogram:
    counts = np.bincount(image.pixels.ravel(), minlength=LEVELS)
    return from_counts(counts)
