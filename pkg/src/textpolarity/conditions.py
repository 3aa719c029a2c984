"""Histogram conditions under which the MBCV trend is expected to be clean.

Case I (bright text on dark background): classes balanced, threshold
near the dark end, class means close together.
Case II (dark text on bright background): classes balanced, threshold
near the bright end, class means far apart.

Threshold and mean gap are normalized by 255 so the bounds live in
[0, 1]. None of the bounds has a canonical value; the defaults below are
tunable choices and are reported alongside every diagnosis.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .imageio import MAX_LEVEL
from .otsu import OtsuResult


@dataclass(frozen=True)
class ConditionConfig:
    balance_tol: float = 0.3
    epsilon: float = 0.2
    delta: float = 0.5
    t_low: float = 0.35
    t_high: float = 0.65

    def __post_init__(self):
        if not 0 < self.epsilon < self.delta < 1:
            raise ValueError("need 0 < epsilon < delta < 1")
        if not 0 < self.t_low < self.t_high < 1:
            raise ValueError("need 0 < t_low < t_high < 1")
        if not 0 < self.balance_tol < 1:
            raise ValueError("need 0 < balance_tol < 1")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ConditionReport:
    w1: float
    w2: float
    t_star_norm: float
    mean_gap_norm: float
    balanced: bool
    case_i: bool
    case_ii: bool
    config: ConditionConfig = ConditionConfig()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["config"] = self.config.to_dict()
        return d


def evaluate(w1: float, w2: float, t_star_norm: float, mean_gap_norm: float,
             config: ConditionConfig = ConditionConfig()) -> ConditionReport:
    """Apply the Case I / Case II rules to already-normalized statistics."""
    balanced = abs(w1 - w2) <= config.balance_tol
    case_i = (balanced and t_star_norm <= config.t_low
              and mean_gap_norm < config.epsilon)
    case_ii = (balanced and t_star_norm >= config.t_high
               and mean_gap_norm > config.delta)
    return ConditionReport(w1=w1, w2=w2, t_star_norm=t_star_norm,
                           mean_gap_norm=mean_gap_norm, balanced=balanced,
                           case_i=case_i, case_ii=case_ii, config=config)


def check_conditions(result: OtsuResult,
                     config: ConditionConfig = ConditionConfig()) -> ConditionReport:
    s = result.stats
    return evaluate(s.w1, s.w2, result.t_star / MAX_LEVEL,
                    abs(s.mu1 - s.mu2) / MAX_LEVEL, config)
