"""MBCV-versus-gamma sweep and polarity decision.

For each gamma on a grid starting at 1, the histogram is remapped by the
power-law transform and Otsu's maximum between-class variance (MBCV) is
recorded. Bright text on a dark background makes the curve rise with
gamma; dark text on a bright background makes it fall.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .conditions import ConditionConfig, ConditionReport, check_conditions
from .errors import DegenerateHistogramError, DomainError
from .histogram import Histogram, build_histogram
from .imageio import GrayImage
from .otsu import OtsuResult, Polarity, otsu_threshold
from .powerlaw import transform_histogram

DEFAULT_GAMMAS = (1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)
DEFAULT_TREND_THRESHOLD = 0.9
CSV_HEADER = ("gamma", "power", "mbcv")

# Grids shorter than this are swept inline; thread start-up costs more
# than a 256-bin Otsu scan.
_PARALLEL_MIN_GRID = 64


class Trend(str, Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    FLUCTUATING = "Fluctuating"

    def __str__(self):
        return self.value


_POLARITY_FOR_TREND = {
    Trend.INCREASING: Polarity.BRIGHT_ON_DARK,
    Trend.DECREASING: Polarity.DARK_ON_BRIGHT,
    Trend.FLUCTUATING: Polarity.INDETERMINATE,
}


@dataclass(frozen=True)
class CurveSample:
    gamma: float
    power: float
    mbcv: float


@dataclass(frozen=True)
class GammaCurve:
    samples: tuple[CurveSample, ...]

    def __post_init__(self):
        samples = tuple(self.samples)
        object.__setattr__(self, "samples", samples)
        if not samples:
            raise ValueError("curve has no samples")
        if samples[0].gamma != 1.0:
            raise ValueError("curve must start at gamma = 1")
        gammas = [s.gamma for s in samples]
        if any(b <= a for a, b in zip(gammas, gammas[1:])):
            raise ValueError("gammas must be strictly increasing")
        if any(s.mbcv < 0 for s in samples):
            raise ValueError("mbcv values must be non-negative")

    @property
    def base_mbcv(self) -> float:
        return self.samples[0].mbcv

    @property
    def gammas(self) -> tuple[float, ...]:
        return tuple(s.gamma for s in self.samples)

    @property
    def powers(self) -> tuple[float, ...]:
        return tuple(s.power for s in self.samples)

    @property
    def mbcvs(self) -> tuple[float, ...]:
        return tuple(s.mbcv for s in self.samples)

    def by_power(self) -> tuple[CurveSample, ...]:
        """Samples ordered by increasing power = 1/gamma (the plot x-axis)."""
        return self.samples[::-1]


def validate_grid(gammas) -> tuple[float, ...]:
    grid = tuple(float(g) for g in gammas)
    if len(grid) < 3:
        raise DomainError("gamma grid needs at least 3 values")
    if grid[0] != 1.0:
        raise DomainError("gamma grid must start at 1")
    if any(not np.isfinite(g) for g in grid):
        raise DomainError("gamma grid values must be finite")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("gamma grid must be strictly increasing")
    return grid


def _parallel_allowed() -> bool:
    return os.environ.get("POLARITY_NO_PARALLEL", "") != "1"


def _mbcv_at(hist: Histogram, gamma: float) -> float:
    try:
        return otsu_threshold(transform_histogram(hist, gamma)).mbcv
    except DegenerateHistogramError:
        return 0.0


def sweep_mbcv(hist: Histogram, gammas=DEFAULT_GAMMAS) -> GammaCurve:
    grid = validate_grid(gammas)
    if hist.occupied().size < 2:
        raise DegenerateHistogramError(
            "degenerate histogram: all pixels share one gray level")
    if len(grid) >= _PARALLEL_MIN_GRID and _parallel_allowed():
        with ThreadPoolExecutor() as pool:
            values = list(pool.map(lambda g: _mbcv_at(hist, g), grid))
    else:
        values = [_mbcv_at(hist, g) for g in grid]
    return GammaCurve(tuple(CurveSample(g, 1.0 / g, v)
                            for g, v in zip(grid, values)))


def classify_trend(curve: GammaCurve,
                   threshold: float = DEFAULT_TREND_THRESHOLD) -> tuple[Trend, float]:
    """Classify the curve by the signs of successive differences.

    Returns the trend and the monotone fraction: the larger of the
    up-step and down-step counts over the number of adjacent pairs.
    Flat steps count toward neither.
    """
    if not 0.5 < threshold <= 1.0:
        raise DomainError("trend threshold must lie in (0.5, 1]")
    diffs = np.diff(np.asarray(curve.mbcvs))
    pairs = diffs.size
    if pairs == 0:
        return Trend.FLUCTUATING, 0.0
    up = int(np.count_nonzero(diffs > 0)) / pairs
    down = int(np.count_nonzero(diffs < 0)) / pairs
    if up >= threshold:
        return Trend.INCREASING, up
    if down >= threshold:
        return Trend.DECREASING, down
    return Trend.FLUCTUATING, max(up, down)


@dataclass(frozen=True)
class SweepConfig:
    gammas: tuple[float, ...] = DEFAULT_GAMMAS
    trend_threshold: float = DEFAULT_TREND_THRESHOLD
    conditions: ConditionConfig = field(default_factory=ConditionConfig)

    def __post_init__(self):
        object.__setattr__(self, "gammas", validate_grid(self.gammas))
        if not 0.5 < self.trend_threshold <= 1.0:
            raise DomainError("trend threshold must lie in (0.5, 1]")


@dataclass(frozen=True)
class PolarityReport:
    polarity: Polarity
    trend: Trend
    monotone_fraction: float
    curve: GammaCurve
    conditions: ConditionReport
    otsu: OtsuResult

    def to_dict(self) -> dict:
        return {
            "polarity": self.polarity.value,
            "trend": self.trend.value,
            "monotone_fraction": self.monotone_fraction,
            "t_star": self.otsu.t_star,
            "mbcv": self.otsu.mbcv,
            "mu_T": self.otsu.mu_T,
            "curve": [{"gamma": s.gamma, "power": s.power, "mbcv": s.mbcv}
                      for s in self.curve.samples],
            "conditions": self.conditions.to_dict(),
        }


def detect_polarity_histogram(hist: Histogram,
                              config: SweepConfig | None = None) -> PolarityReport:
    config = config or SweepConfig()
    base = otsu_threshold(hist)
    curve = sweep_mbcv(hist, config.gammas)
    trend, fraction = classify_trend(curve, config.trend_threshold)
    return PolarityReport(
        polarity=_POLARITY_FOR_TREND[trend],
        trend=trend,
        monotone_fraction=fraction,
        curve=curve,
        conditions=check_conditions(base, config.conditions),
        otsu=base,
    )


def detect_polarity(image: GrayImage, config: SweepConfig | None = None) -> PolarityReport:
    return detect_polarity_histogram(build_histogram(image), config)


def curve_to_csv(curve: GammaCurve, order: str = "gamma") -> str:
    """CSV text with header ``gamma,power,mbcv``.

    Floats are written with 17 significant digits, which round-trips
    doubles exactly. ``order="power"`` lists rows by increasing power.
    """
    if order not in ("gamma", "power"):
        raise ValueError("order must be 'gamma' or 'power'")
    rows = curve.samples if order == "gamma" else curve.by_power()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in rows:
        writer.writerow([format(s.gamma, ".17g"), format(s.power, ".17g"),
                         format(s.mbcv, ".17g")])
    return buf.getvalue()


def curve_from_csv(text: str) -> GammaCurve:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"expected header {','.join(CSV_HEADER)}")
    samples = [CurveSample(float(g), float(p), float(m)) for g, p, m in reader]
    samples.sort(key=lambda s: s.gamma)
    return GammaCurve(tuple(samples))


def write_curve_csv(curve: GammaCurve, path, order: str = "gamma") -> None:
    with open(path, "w", newline="") as fh:
        fh.write(curve_to_csv(curve, order))
