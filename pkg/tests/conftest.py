"""Shared fixtures: canonical model configuration and cached replication runs."""

from __future__ import annotations

import math

import pytest

import shocksim as ss

ACCEPTANCE_SEED = 20260810
ACCEPTANCE_REPS = 10_000

PAPER_X = ss.DistributionSpec(ss.Family.WEIBULL, shape=2.0, mean=1.0)
PAPER_Y = ss.DistributionSpec(ss.Family.WEIBULL, shape=10.0, mean=10.0)
PAPER_COSTS = ss.CostParams()
PAPER_GRID = ss.GridSpec(8.0, 16.0, 0.1)
GAMMAS = (0.90, 0.85, 0.80)


def make_scenario(kappa=0.02, c=1.0 / 50.0, tau=math.inf, variant=None, **kwargs):
    """Paper-default scenario with the given healing and boundary settings."""
    if variant is None:
        variant = ss.Variant.BASE if math.isinf(tau) else ss.Variant.FINITE_HEALING
    return ss.ScenarioConfig(
        variant=variant,
        inter_arrival=kwargs.pop("inter_arrival", PAPER_X),
        magnitude=kwargs.pop("magnitude", PAPER_Y),
        healing=ss.HealingParams(kappa=kappa, tau=tau),
        boundary=ss.BoundaryCoeffs(500.0, 0.0, c),
        **kwargs,
    )


_PROFILE_CACHE: dict = {}


def cached_profiles(scenario, reps=ACCEPTANCE_REPS, seed=ACCEPTANCE_SEED):
    """Memoize replication runs shared between test modules."""
    key = (scenario, reps, seed)
    if key not in _PROFILE_CACHE:
        _PROFILE_CACHE[key] = ss.run_profiles(scenario, reps, seed)
    return _PROFILE_CACHE[key]


@pytest.fixture(scope="session")
def base_scenario():
    """kappa=0.02, B(t) = 500 - t^2/50, the reference configuration."""
    return make_scenario()


@pytest.fixture(scope="session")
def base_profiles(base_scenario):
    return cached_profiles(base_scenario)
