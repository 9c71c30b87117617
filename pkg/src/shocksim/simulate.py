"""Trajectory simulation: failure detection, alarm scanning, replications.

Failure and alarm are observed on the epoch grid ``t = delta, 2*delta, ...``:
the first epoch with damage strictly above the effective boundary is the
failure time, and the first epoch with the boundary-damage gap at most ``d``
(damage still at or below the boundary) is the alarm time.  A replication is
summarized margin-free as a :class:`TrajectoryProfile`, from which the
outcome for any margin follows without re-simulating.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend
from ._core_py import (
    MODE_BOUNDARY_DROP,
    MODE_CENSORED,
    MODE_HEALING_CROSS,
    MODE_SHOCK_JUMP,
)
from .distributions import DistributionSpec, RngStream
from .dynamics import BoundaryCoeffs, HealingParams
from .errors import ParameterError
from .shocks import ShockTrain, generate_train, generate_two_streams, mark_nonhealable

WORKERS_ENV = "SHOCKSIM_WORKERS"

_EMPTY = np.empty(0, dtype=np.float64)


class Variant(str, enum.Enum):
    """The four system variants."""

    BASE = "base"
    FINITE_HEALING = "finite_healing"
    MIXED_NONHEALABLE = "mixed_nonhealable"
    TWO_STREAM = "two_stream"


class FailureMode(str, enum.Enum):
    SHOCK_JUMP = "shock_jump"
    HEALING_CROSS = "healing_cross"
    BOUNDARY_DROP = "boundary_drop"
    CENSORED = "censored"


_MODE_BY_CODE = {
    MODE_CENSORED: FailureMode.CENSORED,
    MODE_SHOCK_JUMP: FailureMode.SHOCK_JUMP,
    MODE_HEALING_CROSS: FailureMode.HEALING_CROSS,
    MODE_BOUNDARY_DROP: FailureMode.BOUNDARY_DROP,
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Full model description for one simulated system."""

    variant: Variant
    inter_arrival: DistributionSpec
    magnitude: DistributionSpec
    healing: HealingParams
    boundary: BoundaryCoeffs
    horizon: float = 100.0
    delta: float = 0.05
    shock_count: int = 200
    p: float | None = None
    nonhealable_inter_arrival: DistributionSpec | None = None
    nonhealable_magnitude: DistributionSpec | None = None

    def __post_init__(self):
        variant = Variant(self.variant)
        object.__setattr__(self, "variant", variant)
        if self.delta <= 0:
            raise ParameterError(f"delta must be positive, got {self.delta}")
        if self.horizon <= 0:
            raise ParameterError(f"horizon must be positive, got {self.horizon}")
        n = round(self.horizon / self.delta)
        if n < 1 or abs(n * self.delta - self.horizon) > 1e-9 * max(1.0, self.horizon):
            raise ParameterError(
                f"horizon {self.horizon} is not an integer number of delta={self.delta} epochs"
            )
        if self.shock_count < 1:
            raise ParameterError(f"shock_count must be at least 1, got {self.shock_count}")
        if variant is Variant.BASE and math.isfinite(self.healing.tau):
            raise ParameterError("base variant requires indefinite healing (tau = inf)")
        if variant is Variant.FINITE_HEALING and not math.isfinite(self.healing.tau):
            raise ParameterError("finite_healing variant requires a finite tau")
        if (self.p is not None) != (variant is Variant.MIXED_NONHEALABLE):
            raise ParameterError("p is required by mixed_nonhealable and no other variant")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"p must lie in [0, 1], got {self.p}")
        pair = (self.nonhealable_inter_arrival, self.nonhealable_magnitude)
        if variant is Variant.TWO_STREAM:
            if any(spec is None for spec in pair):
                raise ParameterError(
                    "two_stream requires nonhealable inter-arrival and magnitude specs"
                )
        elif any(spec is not None for spec in pair):
            raise ParameterError("nonhealable specs are only valid for two_stream")
        self.boundary.check_nonincreasing(self.horizon)

    @property
    def n_epochs(self) -> int:
        return round(self.horizon / self.delta)


@dataclass(frozen=True)
class TrajectoryOutcome:
    """One replication's result for a fixed alarm margin."""

    failure_time: float | None
    alarm_time: float | None
    residual: float | None
    shock_count: int
    failure_mode: FailureMode

    def __post_init__(self):
        if (self.failure_time is None) != (self.failure_mode is FailureMode.CENSORED):
            raise ParameterError("censored outcomes are exactly those without a failure time")
        if self.failure_time is not None and (self.alarm_time is None or self.residual is None):
            raise ParameterError("failed outcomes carry an alarm time and a residual")

    @property
    def censored(self) -> bool:
        return self.failure_time is None


@dataclass(frozen=True, eq=False)
class TrajectoryProfile:
    """Margin-independent summary of one replication.

    ``record_epochs``/``record_gaps`` are the strictly decreasing prefix
    minima of the boundary-damage gap; the alarm epoch for any margin ``d``
    is the first record at most ``d``.  On a failed path the last record is
    the (negative-gap) failure epoch, so an alarm always exists and a jump
    straight past the band yields alarm = failure and residual 0.
    """

    delta: float
    fail_epoch: int
    shock_count: int
    failure_mode: FailureMode
    record_epochs: np.ndarray
    record_gaps: np.ndarray

    @property
    def censored(self) -> bool:
        return self.fail_epoch < 0

    @property
    def failure_time(self) -> float | None:
        return None if self.censored else self.fail_epoch * self.delta

    def alarm_epoch(self, d: float) -> int | None:
        """First epoch whose gap is at most ``d``, or None if never reached."""
        idx = int(np.searchsorted(-self.record_gaps, -d, side="left"))
        if idx >= self.record_gaps.size:
            return None
        return int(self.record_epochs[idx])

    def outcome(self, d: float) -> TrajectoryOutcome:
        check_margin(d)
        alarm = self.alarm_epoch(d)
        alarm_time = None if alarm is None else alarm * self.delta
        if self.censored:
            return TrajectoryOutcome(None, alarm_time, None, self.shock_count, FailureMode.CENSORED)
        failure_time = self.fail_epoch * self.delta
        return TrajectoryOutcome(
            failure_time,
            alarm_time,
            failure_time - alarm_time,
            self.shock_count,
            self.failure_mode,
        )


def check_margin(d) -> None:
    if not d > 0:
        raise ParameterError(f"alarm margin d must be positive, got {d}")


def build_trains(scenario: ScenarioConfig, stream: RngStream):
    """Variant dispatch: damage train, boundary drops, and whether drops count in N."""
    variant = scenario.variant
    if variant in (Variant.BASE, Variant.FINITE_HEALING):
        train = generate_train(
            scenario.inter_arrival, scenario.magnitude, scenario.shock_count, stream
        )
        return train, _EMPTY, _EMPTY, False
    if variant is Variant.MIXED_NONHEALABLE:
        train = generate_train(
            scenario.inter_arrival, scenario.magnitude, scenario.shock_count, stream
        )
        train = mark_nonhealable(train, scenario.p, stream)
        permanent = ~train.healable
        return train, train.arrivals[permanent], train.magnitudes[permanent], False
    healable, nonhealable = generate_two_streams(
        (scenario.inter_arrival, scenario.magnitude),
        (scenario.nonhealable_inter_arrival, scenario.nonhealable_magnitude),
        scenario.horizon,
        stream,
    )
    return healable, nonhealable.arrivals, nonhealable.magnitudes, True


def walk_profile(
    train: ShockTrain,
    drop_times,
    drop_sizes,
    count_drops: bool,
    healing: HealingParams,
    boundary: BoundaryCoeffs,
    delta: float,
    n_epochs: int,
    *,
    trace: bool = False,
):
    """Run the epoch walk on explicit inputs.

    Returns a :class:`TrajectoryProfile`, or ``(profile, damage, boundary)``
    arrays over the walked epochs when ``trace`` is set.
    """
    kernel = backend.active_kernel()
    drop_times = np.ascontiguousarray(drop_times, dtype=np.float64)
    drop_sizes = np.ascontiguousarray(drop_sizes, dtype=np.float64)
    damage_out = boundary_out = None
    if trace:
        damage_out = np.full(n_epochs, np.nan)
        boundary_out = np.full(n_epochs, np.nan)
    fail_epoch, count, mode_code, rec_epochs, rec_gaps = kernel.walk(
        train.arrivals,
        train.magnitudes,
        np.ascontiguousarray(train.healable, dtype=np.uint8),
        drop_times,
        drop_sizes,
        bool(count_drops),
        healing.kappa,
        healing.tau,
        boundary.a,
        boundary.b,
        boundary.c,
        delta,
        n_epochs,
        damage_out,
        boundary_out,
    )
    profile = TrajectoryProfile(
        delta=delta,
        fail_epoch=int(fail_epoch),
        shock_count=int(count),
        failure_mode=_MODE_BY_CODE[mode_code],
        record_epochs=rec_epochs,
        record_gaps=rec_gaps,
    )
    if trace:
        walked = profile.fail_epoch if profile.fail_epoch > 0 else n_epochs
        return profile, damage_out[:walked], boundary_out[:walked]
    return profile


def simulate_profile(scenario: ScenarioConfig, stream: RngStream, *, trace: bool = False):
    """Generate the shocks and walk one trajectory."""
    train, drop_times, drop_sizes, count_drops = build_trains(scenario, stream)
    return walk_profile(
        train,
        drop_times,
        drop_sizes,
        count_drops,
        scenario.healing,
        scenario.boundary,
        scenario.delta,
        scenario.n_epochs,
        trace=trace,
    )


def simulate_trajectory(scenario: ScenarioConfig, d: float, stream: RngStream) -> TrajectoryOutcome:
    """One replication's outcome for alarm margin ``d``."""
    check_margin(d)
    return simulate_profile(scenario, stream).outcome(d)


def resolve_workers(workers: int | None = None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers < 1:
        raise ParameterError(f"worker count must be at least 1, got {workers}")
    return workers


def _profile_batch(scenario, master_seed, lo, hi):
    return [simulate_profile(scenario, RngStream(master_seed, i)) for i in range(lo, hi)]


_CODE_BY_MODE = {mode: code for code, mode in _MODE_BY_CODE.items()}


def _pack_profiles(profiles):
    # Flat-array transfer format: pickling a handful of large arrays instead
    # of thousands of small ones keeps the parallel path from being
    # serialization-bound.
    lengths = np.array([p.record_gaps.size for p in profiles], dtype=np.int64)
    return (
        np.array([p.delta for p in profiles]),
        np.array([p.fail_epoch for p in profiles], dtype=np.int64),
        np.array([p.shock_count for p in profiles], dtype=np.int64),
        np.array([_CODE_BY_MODE[p.failure_mode] for p in profiles], dtype=np.uint8),
        lengths,
        np.concatenate([p.record_epochs for p in profiles]) if profiles else np.empty(0, np.int64),
        np.concatenate([p.record_gaps for p in profiles]) if profiles else _EMPTY,
    )


def _unpack_profiles(packed):
    deltas, fail_epochs, counts, modes, lengths, rec_epochs, rec_gaps = packed
    offsets = np.concatenate(([0], np.cumsum(lengths)))
    return [
        TrajectoryProfile(
            delta=float(deltas[i]),
            fail_epoch=int(fail_epochs[i]),
            shock_count=int(counts[i]),
            failure_mode=_MODE_BY_CODE[int(modes[i])],
            record_epochs=rec_epochs[offsets[i] : offsets[i + 1]],
            record_gaps=rec_gaps[offsets[i] : offsets[i + 1]],
        )
        for i in range(lengths.size)
    ]


def _packed_batch(scenario, master_seed, lo, hi):
    return _pack_profiles(_profile_batch(scenario, master_seed, lo, hi))


def run_profiles(
    scenario: ScenarioConfig,
    reps: int,
    master_seed: int,
    workers: int | None = None,
) -> list[TrajectoryProfile]:
    """One profile per replication, replication ``i`` on stream ``(master_seed, i)``.

    Output is independent of the worker count: each replication always uses
    the same stream and results are collected in replication order.
    """
    if reps < 1:
        raise ParameterError(f"reps must be at least 1, got {reps}")
    workers = resolve_workers(workers)
    if workers == 1:
        return _profile_batch(scenario, master_seed, 0, reps)
    step = max(1, -(-reps // (workers * 4)))
    profiles: list[TrajectoryProfile] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_packed_batch, scenario, master_seed, lo, min(lo + step, reps))
            for lo in range(0, reps, step)
        ]
        for future in futures:
            profiles.extend(_unpack_profiles(future.result()))
    return profiles


def run_replications(
    scenario: ScenarioConfig,
    d: float,
    reps: int,
    master_seed: int,
    workers: int | None = None,
) -> list[TrajectoryOutcome]:
    """Outcomes of ``reps`` independent replications at alarm margin ``d``."""
    check_margin(d)
    return [p.outcome(d) for p in run_profiles(scenario, reps, master_seed, workers)]


def margin_scan(profiles, d_values):
    """Alarm times of every (replication, margin) pair, vectorized.

    Returns ``(fail_times, alarm_times, censored)``: ``fail_times[i]`` is nan
    for censored replications and ``alarm_times[i, j]`` is nan where the gap
    never comes within ``d_values[j]``.  Matches ``profile.outcome(d)``
    value-for-value; tested against it.
    """
    d = np.asarray(d_values, dtype=np.float64)
    n = len(profiles)
    fail_times = np.full(n, np.nan)
    alarm_times = np.full((n, d.size), np.nan)
    censored = np.zeros(n, dtype=bool)
    for i, profile in enumerate(profiles):
        if profile.censored:
            censored[i] = True
        else:
            fail_times[i] = profile.fail_epoch * profile.delta
        idx = np.searchsorted(-profile.record_gaps, -d, side="left")
        hit = idx < profile.record_gaps.size
        if hit.any():
            alarm_times[i, hit] = profile.record_epochs[idx[hit]] * profile.delta
    return fail_times, alarm_times, censored
