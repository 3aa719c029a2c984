"""Seeded synthetic gray images drawn from a two-component Gaussian mixture.

Random numbers come from SplitMix64 (Steele, Lea & Flood 2014). Output
``k`` (k = 0, 1, 2, ...) of a stream seeded with ``s`` is::

    z = s + (k + 1) * 0x9E3779B97F4A7C15            (mod 2**64)
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

and is turned into a double in [0, 1) as ``(z >> 11) * 2**-53``.

Pixel ``j`` (row-major) consumes uniforms ``3j``, ``3j+1`` and ``3j+2``:

* ``u0 < weight1`` selects mode 1, otherwise mode 2;
* Box-Muller gives ``n = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)``;
* the value is ``mean + std * n``, scaled by 255, rounded half up and
  clamped to [0, 255].

Because SplitMix64 is a counter-based mix, the whole stream is
generated in one vectorized pass.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .imageio import MAX_LEVEL, GrayImage

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def splitmix64(seed: int, n: int) -> np.ndarray:
    """First ``n`` SplitMix64 outputs for ``seed`` as uint64."""
    k = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK64) + k * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, n: int) -> np.ndarray:
    """``n`` doubles in [0, 1) from the SplitMix64 stream."""
    return (splitmix64(seed, n) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


@dataclass(frozen=True)
class SynthSpec:
    width: int
    height: int
    mode1_mean: float
    mode2_mean: float
    mode1_std: float
    mode2_std: float
    weight1: float
    seed: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be positive")
        if not 0.0 <= self.mode1_mean < self.mode2_mean <= 1.0:
            raise ValueError("need 0 <= mode1_mean < mode2_mean <= 1")
        if self.mode1_std <= 0 or self.mode2_std <= 0:
            raise ValueError("standard deviations must be positive")
        if not 0.0 < self.weight1 < 1.0:
            raise ValueError("weight1 must lie strictly between 0 and 1")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def to_dict(self) -> dict:
        return asdict(self)


def generate(spec: SynthSpec) -> GrayImage:
    n = spec.width * spec.height
    u = uniforms(spec.seed, 3 * n).reshape(n, 3)
    first = u[:, 0] < spec.weight1
    normal = np.sqrt(-2.0 * np.log1p(-u[:, 1])) * np.cos(2.0 * np.pi * u[:, 2])
    mean = np.where(first, spec.mode1_mean, spec.mode2_mean)
    std = np.where(first, spec.mode1_std, spec.mode2_std)
    level = np.floor((mean + std * normal) * MAX_LEVEL + 0.5)
    level = np.clip(level, 0, MAX_LEVEL).astype(np.uint8)
    return GrayImage(level.reshape(spec.height, spec.width))


def case_i_spec(seed: int, width: int = 128, height: int = 128) -> SynthSpec:
    """Balanced, dark, low-contrast modes: bright text on a dark background.

    The background sits at black. Level 0 is a fixed point of the
    transform, so the gap to the text mode widens over the whole sweep.
    """
    return SynthSpec(width, height, mode1_mean=0.0, mode2_mean=0.12,
                     mode1_std=0.002, mode2_std=0.025, weight1=0.5, seed=seed)


def case_ii_spec(seed: int, width: int = 128, height: int = 128) -> SynthSpec:
    """Balanced, high-contrast modes toward the bright end: dark text on bright.

    The dark mode's upper tail keeps Otsu's threshold above 0.65; with an
    empty gap between modes the smallest-t tie-break would otherwise put
    it just above the dark mode.
    """
    return SynthSpec(width, height, mode1_mean=0.4, mode2_mean=0.98,
                     mode1_std=0.1, mode2_std=0.015, weight1=0.5, seed=seed)


def unimodal_spec(seed: int, width: int = 128, height: int = 128) -> SynthSpec:
    """One dominant mode with a small overlapping one (no usable bimodality)."""
    return SynthSpec(width, height, mode1_mean=0.45, mode2_mean=0.55,
                     mode1_std=0.08, mode2_std=0.1, weight1=0.92, seed=seed)
