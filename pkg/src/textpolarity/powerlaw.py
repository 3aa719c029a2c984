"""Normalized power-law transform ``o = i ** (1/gamma)`` on 8-bit levels.

Levels are normalized by 255, raised to ``1/gamma`` and requantized with
round-half-up, so 0 and 255 are fixed points for every gamma. The
transform is applied through a 256-entry lookup table, which lets a
histogram be remapped bin-by-bin instead of touching pixels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .histogram import Histogram, from_counts
from .imageio import LEVELS, MAX_LEVEL, GrayImage


@dataclass(frozen=True)
class Gamma:
    gamma: float

    def __post_init__(self):
        g = float(self.gamma)
        if not np.isfinite(g) or g <= 0:
            raise ValueError(f"gamma must be a positive finite number, got {self.gamma!r}")
        object.__setattr__(self, "gamma", g)

    @property
    def power(self) -> float:
        return 1.0 / self.gamma


def _as_gamma(g) -> Gamma:
    return g if isinstance(g, Gamma) else Gamma(g)


@lru_cache(maxsize=256)
def _table(gamma: float) -> np.ndarray:
    x = np.arange(LEVELS, dtype=np.float64) / MAX_LEVEL
    lut = np.floor(np.power(x, 1.0 / gamma) * MAX_LEVEL + 0.5)
    lut = np.clip(lut, 0, MAX_LEVEL).astype(np.uint8)
    lut.setflags(write=False)
    return lut


def lookup_table(g) -> np.ndarray:
    """Read-only uint8 table mapping each level to its transformed level."""
    return _table(_as_gamma(g).gamma)


def transform_level(v: int, g) -> int:
    if not 0 <= v <= MAX_LEVEL:
        raise ValueError(f"gray value {v} outside [0, {MAX_LEVEL}]")
    return int(lookup_table(g)[v])


def transform_image(image: GrayImage, g) -> GrayImage:
    return GrayImage(lookup_table(g)[image.pixels])


def transform_histogram(hist: Histogram, g) -> Histogram:
    counts = np.bincount(lookup_table(g), weights=hist.counts, minlength=LEVELS)
    return from_counts(counts.astype(np.int64))
