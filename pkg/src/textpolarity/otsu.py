"""Otsu threshold selection and the maximum between-class variance.

A threshold ``t`` splits the gray levels into a low class ``[0, t]`` and
a high class ``[t+1, 255]``. All statistics are computed from integer
prefix sums of the histogram counts, so identical inputs produce
bit-identical scores and exact ties are resolved deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateHistogramError, DomainError
from .histogram import Histogram
from .imageio import LEVELS, MAX_LEVEL, BinaryImage, GrayImage

MAX_THRESHOLD = LEVELS - 2

# Relative window inside which float scores are re-ranked exactly.
_TIE_WINDOW = 1e-12


class Polarity(str, Enum):
    BRIGHT_ON_DARK = "BrightOnDark"
    DARK_ON_BRIGHT = "DarkOnBright"
    INDETERMINATE = "Indeterminate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ClassStats:
    t: int
    w1: float
    w2: float
    mu1: float
    mu2: float
    sigma_b2: float


@dataclass(frozen=True)
class OtsuResult:
    t_star: int
    mbcv: float
    stats: ClassStats
    mu_T: float


def _prefix_sums(hist: Histogram):
    counts = hist.counts
    levels = np.arange(LEVELS, dtype=np.int64)
    c1 = np.cumsum(counts)[:-1]
    s1 = np.cumsum(levels * counts)[:-1]
    return c1, s1, hist.total, int(np.dot(levels, counts))


def between_class_variance(hist: Histogram) -> np.ndarray:
    """sigma_B^2(t) for every t in [0, 254]; empty-class thresholds score 0."""
    c1, s1, n, s = _prefix_sums(hist)
    c2 = n - c1
    # mu1 - mu2 = (n*s1 - s*c1) / (c1*c2), evaluated exactly in integers
    num = (n * s1 - s * c1).astype(np.float64)
    c1f = c1.astype(np.float64)
    c2f = c2.astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        gap = num / (c1f * c2f)
        sigma = (c1f / n) * (c2f / n) * gap * gap
    sigma[(c1 == 0) | (c2 == 0)] = 0.0
    return sigma


def class_stats(hist: Histogram, t: int) -> ClassStats:
    if not 0 <= t <= MAX_THRESHOLD:
        raise DomainError(f"threshold {t} outside [0, {MAX_THRESHOLD}]")
    counts = hist.counts
    levels = np.arange(LEVELS, dtype=np.int64)
    n = hist.total
    c1 = int(counts[:t + 1].sum())
    c2 = n - c1
    s1 = int(np.dot(levels[:t + 1], counts[:t + 1]))
    s2 = int(np.dot(levels[t + 1:], counts[t + 1:]))
    w1 = c1 / n
    w2 = c2 / n
    mu1 = s1 / c1 if c1 else 0.0
    mu2 = s2 / c2 if c2 else 0.0
    sigma = w1 * w2 * (mu1 - mu2) ** 2 if c1 and c2 else 0.0
    return ClassStats(t=t, w1=w1, w2=w2, mu1=mu1, mu2=mu2, sigma_b2=sigma)


def _exact_argmax(hist: Histogram, candidates) -> int:
    # Compare num^2 / (c1*c2) as exact rationals; first maximum wins.
    c1, s1, n, s = _prefix_sums(hist)
    best_t, best_num, best_den = None, 0, 1
    for t in candidates:
        a, b = int(c1[t]), n - int(c1[t])
        num = (n * int(s1[t]) - s * a) ** 2
        den = a * b
        if best_t is None or num * best_den > best_num * den:
            best_t, best_num, best_den = int(t), num, den
    return best_t


def otsu_threshold(hist: Histogram) -> OtsuResult:
    """Threshold maximizing between-class variance; ties go to the smallest t."""
    if hist.occupied().size < 2:
        raise DegenerateHistogramError(
            "degenerate histogram: all pixels share one gray level")
    sigma = between_class_variance(hist)
    peak = sigma.max()
    candidates = np.flatnonzero(sigma >= peak * (1.0 - _TIE_WINDOW))
    t_star = int(candidates[0]) if candidates.size == 1 else _exact_argmax(hist, candidates)
    stats = class_stats(hist, t_star)
    return OtsuResult(t_star=t_star, mbcv=float(sigma[t_star]), stats=stats,
                      mu_T=hist.mean())


def binarize(image: GrayImage, t: int, polarity: Polarity | None = None,
             invert: bool = False) -> BinaryImage:
    """Pixels <= t become 0 and the rest 255; ``invert`` swaps the two.

    ``polarity`` does not change the pixel assignment. It only records
    which class is text: white for BrightOnDark, black for DarkOnBright.
    """
    low, high = (MAX_LEVEL, 0) if invert else (0, MAX_LEVEL)
    out = np.where(image.pixels <= t, low, high).astype(np.uint8)
    return BinaryImage(out)


def text_is_white(polarity: Polarity, invert: bool = False) -> bool | None:
    """Whether text pixels come out white after :func:`binarize`."""
    if polarity is Polarity.INDETERMINATE:
        return None
    white = polarity is Polarity.BRIGHT_ON_DARK
    return white != invert
