"""Damage accumulation and the aging failure boundary.

``cumulative_damage`` is the direct defining sum; the simulation kernels use
an incremental recurrence that must agree with it to 1e-9 relative error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ParameterError
from .shocks import ShockTrain


@dataclass(frozen=True)
class HealingParams:
    """Exponential healing at rate ``kappa`` for ``tau`` time units per shock.

    ``tau = inf`` heals indefinitely.  With finite ``tau`` a shock's damage
    freezes at magnitude * exp(-kappa * tau) once the shock is ``tau`` old.
    """

    kappa: float
    tau: float = math.inf

    def __post_init__(self):
        if self.kappa < 0:
            raise ParameterError(f"kappa must be non-negative, got {self.kappa}")
        if not self.tau > 0:
            raise ParameterError(f"tau must be positive (or infinite), got {self.tau}")


@dataclass(frozen=True)
class BoundaryCoeffs:
    """Quadratic failure boundary ``a + b*t - c*t**2``."""

    a: float
    b: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        if self.a <= 0:
            raise ParameterError(f"initial threshold a must be positive, got {self.a}")
        if self.c < 0:
            raise ParameterError(f"quadratic coefficient c must be non-negative, got {self.c}")

    def value(self, t):
        """Boundary level at ``t`` (scalar or array), before any drops."""
        return self.a + self.b * t - self.c * t * t

    def check_nonincreasing(self, horizon: float) -> None:
        """Reject coefficients whose boundary still rises at the horizon.

        ``b <= 0`` is truly non-increasing; ``b > 0`` is accepted only when
        ``b - 2*c*horizon <= 0``, i.e. the slope has turned negative within
        the observation window.
        """
        if self.b <= 0:
            return
        if self.b - 2.0 * self.c * horizon > 0:
            raise ParameterError(
                f"boundary with b={self.b}, c={self.c} increases over [0, {horizon}]"
            )


def cumulative_damage(train: ShockTrain, t: float, healing: HealingParams) -> float:
    """Damage at ``t``: every healable arrived shock, decayed by its healing age.

    A shock of magnitude y arriving at s contributes y * exp(-kappa * min(t - s, tau));
    nonhealable shocks contribute nothing here (they act on the boundary).
    """
    if t < 0:
        raise ParameterError(f"t must be non-negative, got {t}")
    mask = (train.arrivals <= t) & train.healable
    if not mask.any():
        return 0.0
    ages = t - train.arrivals[mask]
    if math.isfinite(healing.tau):
        ages = np.minimum(ages, healing.tau)
    return float(np.sum(train.magnitudes[mask] * np.exp(-healing.kappa * ages)))


def effective_boundary(
    coeffs: BoundaryCoeffs, t: float, drops: Iterable[tuple[float, float]] = ()
) -> float:
    """Boundary at ``t`` minus all permanent drops that have occurred by ``t``."""
    if t < 0:
        raise ParameterError(f"t must be non-negative, got {t}")
    value = coeffs.value(t)
    for when, size in drops:
        if when < 0:
            raise ParameterError(f"drop times must be non-negative, got {when}")
        if when <= t:
            value -= size
    return float(value)
