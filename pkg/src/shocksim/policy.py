"""Residual percentiles, cost-rate evaluation and the margin grid search."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, OptimizationError, ParameterError
from .simulate import ScenarioConfig, margin_scan, run_profiles

# Compensates the binary representation of round gammas (0.9, 0.85, ...) so
# that an exactly integer n*(1-gamma) indexes the intended order statistic.
_GRID_SNAP = 1e-9


@dataclass(frozen=True)
class CostParams:
    """Cycle cost components; revenue enters the running rate negatively."""

    install: float = 5000.0
    inspection_rate: float = 50.0
    operating_rate: float = 100.0
    revenue_rate: float = 200.0
    failure_surcharge: float = 1000.0

    def __post_init__(self):
        for name in ("install", "inspection_rate", "operating_rate", "revenue_rate", "failure_surcharge"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be non-negative, got {getattr(self, name)}")

    @property
    def net_rate(self) -> float:
        return self.inspection_rate + self.operating_rate - self.revenue_rate


@dataclass(frozen=True)
class PolicyEvaluation:
    """Cost-rate summary of one (margin, survival level) policy."""

    t_star: float
    mean_cycle: float
    failure_fraction: float
    ecput: float
    d: float | None = None
    gamma: float | None = None


@dataclass(frozen=True)
class GridSpec:
    """Margin grid: d_min, d_min + step, ..., up to d_max."""

    d_min: float
    d_max: float
    step: float = 0.1

    def __post_init__(self):
        if self.d_min <= 0:
            raise ParameterError(f"d_min must be positive, got {self.d_min}")
        if self.d_min > self.d_max:
            raise ParameterError(f"d_min {self.d_min} exceeds d_max {self.d_max}")
        if self.step <= 0:
            raise ParameterError(f"step must be positive, got {self.step}")

    def values(self) -> np.ndarray:
        n = int(np.floor((self.d_max - self.d_min) / self.step + _GRID_SNAP)) + 1
        return self.d_min + self.step * np.arange(n)


def residual_percentile(residuals, gamma: float) -> float:
    """Longest wait survived with probability at least ``gamma``.

    The lower empirical (1 - gamma)-quantile: the order statistic at position
    floor(n * (1 - gamma)), clamped to at least 1, with no interpolation.
    """
    r = np.asarray(residuals, dtype=np.float64)
    if r.size == 0:
        raise InsufficientDataError("no residuals to estimate a percentile from")
    if not 0.0 < gamma < 1.0:
        raise ParameterError(f"gamma must lie in (0, 1), got {gamma}")
    k = int(np.floor(r.size * (1.0 - gamma) + _GRID_SNAP))
    k = min(max(k, 1), r.size)
    return float(np.partition(r, k - 1)[k - 1])


def _evaluate(fail_times, alarm_times, t_star, costs, d, gamma) -> PolicyEvaluation:
    scheduled = alarm_times + t_star
    cycles = np.minimum(fail_times, scheduled)
    mean_cycle = float(cycles.mean())
    failure_fraction = float((fail_times <= scheduled).mean())
    ecput = (
        costs.install + costs.net_rate * mean_cycle + costs.failure_surcharge * failure_fraction
    ) / mean_cycle
    return PolicyEvaluation(float(t_star), mean_cycle, failure_fraction, ecput, d, gamma)


def evaluate_policy(
    outcomes,
    t_star: float,
    costs: CostParams,
    *,
    d: float | None = None,
    gamma: float | None = None,
) -> PolicyEvaluation:
    """Cost rate of "replace at min(T, T' + t_star)" over non-censored outcomes.

    A replication counts as failed when its failure time is at most the
    scheduled replacement T' + t_star.
    """
    if len(outcomes) == 0:
        raise InsufficientDataError("no outcomes to evaluate")
    if not t_star >= 0:
        raise ParameterError(f"t_star must be non-negative, got {t_star}")
    if any(o.failure_time is None for o in outcomes):
        raise ParameterError("censored outcomes must be excluded before policy evaluation")
    fail_times = np.array([o.failure_time for o in outcomes], dtype=np.float64)
    alarm_times = np.array([o.alarm_time for o in outcomes], dtype=np.float64)
    return _evaluate(fail_times, alarm_times, t_star, costs, d, gamma)


@dataclass(frozen=True)
class GridSearchResult:
    """Every grid-point evaluation plus the per-gamma optima."""

    rows: tuple[PolicyEvaluation, ...]
    optima: dict[float, PolicyEvaluation]
    skipped: tuple[float, ...] = ()


def optimize_d(
    scenario: ScenarioConfig,
    grid: GridSpec,
    gammas,
    costs: CostParams,
    reps: int,
    master_seed: int,
    *,
    workers: int | None = None,
    profiles=None,
    split_sample: bool = False,
) -> GridSearchResult:
    """Grid search over the alarm margin with common random numbers.

    One replication set drives every margin: the shocks do not depend on d,
    so each grid point only re-scans the stored gap profiles.  Per gamma the
    optimum is the smallest d attaining the minimal cost rate.  t_star is
    estimated in-sample by default; ``split_sample`` estimates it on the
    first half of the replications and evaluates costs on the second half.
    """
    d_values = grid.values()
    gammas = [float(g) for g in gammas]
    for g in gammas:
        if not 0.0 < g < 1.0:
            raise ParameterError(f"gamma must lie in (0, 1), got {g}")
    if not gammas:
        raise ParameterError("at least one gamma is required")
    if profiles is None:
        profiles = run_profiles(scenario, reps, master_seed, workers=workers)
    fail_times, alarm_times, censored = margin_scan(profiles, d_values)
    keep = ~censored
    estimate = keep if not split_sample else keep & (np.arange(len(profiles)) < len(profiles) // 2)
    evaluate = keep if not split_sample else keep & ~(np.arange(len(profiles)) < len(profiles) // 2)

    rows: list[PolicyEvaluation] = []
    skipped: list[float] = []
    best: dict[float, PolicyEvaluation] = {}
    for j, d in enumerate(d_values):
        d = float(d)
        if not estimate.any() or not evaluate.any():
            warnings.warn(f"margin d={d:g}: every replication censored; grid point skipped")
            skipped.append(d)
            continue
        est_residuals = fail_times[estimate] - alarm_times[estimate, j]
        eval_fail = fail_times[evaluate]
        eval_alarm = alarm_times[evaluate, j]
        for gamma in gammas:
            t_star = residual_percentile(est_residuals, gamma)
            row = _evaluate(eval_fail, eval_alarm, t_star, costs, d, gamma)
            rows.append(row)
            incumbent = best.get(gamma)
            if incumbent is None or row.ecput < incumbent.ecput:
                best[gamma] = row
    if not best:
        raise OptimizationError("every margin on the grid was skipped (all replications censored)")
    return GridSearchResult(tuple(rows), best, tuple(skipped))
