"""Monte Carlo simulation of shock-degraded, self-healing systems and
optimization of the preventive-replacement margin.

A system accumulates damage from randomly arriving shocks of random
magnitude, heals exponentially, and fails when the accumulated damage
exceeds an aging (non-increasing) boundary.  The package simulates failure
and alarm times over seeded replications, estimates post-alarm survival
percentiles, and grid-searches the alarm margin minimizing the expected cost
per unit time.
"""

from . import errors
from .backend import active_kernel_name, available_kernels
from .config import ExperimentConfig, SweepCell, dump_config, load_config
from .distributions import (
    DistributionSpec,
    Family,
    RngStream,
    derive_seed,
    sample,
    scale_for_mean,
)
from .dynamics import BoundaryCoeffs, HealingParams, cumulative_damage, effective_boundary
from .policy import (
    CostParams,
    GridSearchResult,
    GridSpec,
    PolicyEvaluation,
    evaluate_policy,
    optimize_d,
    residual_percentile,
)
from .reliability import (
    ReplacementRule,
    SurvivalCurve,
    empirical_survival,
    scenario_replacement_times,
)
from .shocks import ShockTrain, generate_train, generate_two_streams, mark_nonhealable
from .simulate import (
    FailureMode,
    ScenarioConfig,
    TrajectoryOutcome,
    TrajectoryProfile,
    Variant,
    build_trains,
    margin_scan,
    run_profiles,
    run_replications,
    simulate_profile,
    simulate_trajectory,
    walk_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCoeffs",
    "CostParams",
    "DistributionSpec",
    "ExperimentConfig",
    "FailureMode",
    "Family",
    "GridSearchResult",
    "GridSpec",
    "HealingParams",
    "PolicyEvaluation",
    "ReplacementRule",
    "RngStream",
    "ScenarioConfig",
    "ShockTrain",
    "SurvivalCurve",
    "SweepCell",
    "TrajectoryOutcome",
    "TrajectoryProfile",
    "Variant",
    "active_kernel_name",
    "available_kernels",
    "build_trains",
    "cumulative_damage",
    "derive_seed",
    "dump_config",
    "effective_boundary",
    "empirical_survival",
    "errors",
    "evaluate_policy",
    "generate_train",
    "generate_two_streams",
    "load_config",
    "margin_scan",
    "mark_nonhealable",
    "optimize_d",
    "residual_percentile",
    "run_profiles",
    "run_replications",
    "sample",
    "scale_for_mean",
    "scenario_replacement_times",
    "simulate_profile",
    "simulate_trajectory",
    "walk_profile",
]
