"""Empirical survival curves for the replacement-rule comparison."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, ParameterError


class ReplacementRule(str, enum.Enum):
    """The five replacement rules compared on one replication set."""

    FAILURE_100 = "failure_100"
    RISK_20 = "risk_20"
    RISK_15 = "risk_15"
    RISK_10 = "risk_10"
    RISK_0 = "risk_0"

    @property
    def gamma(self) -> float | None:
        """Survival probability behind the rule's post-alarm wait, if any."""
        return {_R.RISK_20: 0.80, _R.RISK_15: 0.85, _R.RISK_10: 0.90}.get(self)


_R = ReplacementRule


@dataclass(frozen=True, eq=False)
class SurvivalCurve:
    """Right-continuous step function S(t) = fraction of event times > t."""

    times: np.ndarray
    survival: np.ndarray
    sample_size: int

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        survival = np.asarray(self.survival, dtype=np.float64)
        if times.shape != survival.shape or times.ndim != 1 or times.size == 0:
            raise ParameterError("times and survival must be 1-d, equal-length and non-empty")
        if np.any(np.diff(times) <= 0):
            raise ParameterError("event times must be strictly increasing")
        if np.any(np.diff(survival) > 0) or survival[0] > 1.0 or survival[-1] < 0.0:
            raise ParameterError("survival values must be non-increasing within [0, 1]")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "survival", survival)

    def __call__(self, t):
        """Evaluate S(t); scalar or vectorized."""
        levels = np.concatenate(([1.0], self.survival))
        out = levels[np.searchsorted(self.times, t, side="right")]
        return float(out) if np.isscalar(out) or out.ndim == 0 else out


def empirical_survival(replacement_times) -> SurvivalCurve:
    """Step-function survival curve of a positive sample: S(t) = #{times > t} / n."""
    times = np.asarray(replacement_times, dtype=np.float64)
    if times.size == 0:
        raise InsufficientDataError("empty replacement-time sample")
    if np.any(times <= 0):
        raise ParameterError("replacement times must be positive")
    unique, counts = np.unique(times, return_counts=True)
    survival = 1.0 - np.cumsum(counts) / times.size
    return SurvivalCurve(unique, survival, int(times.size))


def scenario_replacement_times(outcomes, rule, t_stars=None) -> np.ndarray:
    """Pathwise replacement times of non-censored outcomes under one rule.

    ``failure_100`` replaces at failure, ``risk_0`` at the alarm, and
    ``risk_X`` at min(T, T' + t_stars[gamma]) for gamma = 1 - X/100.
    """
    rule = ReplacementRule(rule)
    if any(o.failure_time is None for o in outcomes):
        raise ParameterError("outcomes must be non-censored")
    fail_times = np.array([o.failure_time for o in outcomes], dtype=np.float64)
    if rule is ReplacementRule.FAILURE_100:
        return fail_times
    alarm_times = np.array([o.alarm_time for o in outcomes], dtype=np.float64)
    if rule is ReplacementRule.RISK_0:
        return alarm_times
    gamma = rule.gamma
    if not t_stars or gamma not in t_stars:
        raise ParameterError(f"rule {rule.value} requires t_stars[{gamma}]")
    return np.minimum(fail_times, alarm_times + t_stars[gamma])
