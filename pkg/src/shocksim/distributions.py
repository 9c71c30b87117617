"""Random variate generation for the shock model's distribution families.

Every stream is keyed by ``(master_seed, stream_index)`` and reproduces the
same draw sequence on every run (for a fixed numpy version).  Weibull and
exponential draws use the inverse CDF; gamma goes through numpy's
Marsaglia-Tsang sampler and inverse-Gaussian through numpy's
Michael-Schucany-Haas transform (``Generator.wald``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


class Family(str, enum.Enum):
    """Supported parametric families for inter-arrival times and magnitudes."""

    WEIBULL = "weibull"
    GAMMA = "gamma"
    EXPONENTIAL = "exponential"
    INVERSE_GAUSSIAN = "inverse_gaussian"


#: Default inverse-Gaussian shape (lambda) when a spec does not give one.
DEFAULT_INVERSE_GAUSSIAN_SHAPE = 1.0


def scale_for_mean(family: Family | str, shape: float | None, mean_target: float) -> float:
    """Scale parameter (rate, for the exponential family) giving ``mean_target``.

    Weibull: mean / gamma(1 + 1/shape).  Gamma: mean / shape.  Exponential:
    the rate 1 / mean.  Inverse-Gaussian: the mean itself (its ``shape`` is
    the independent lambda parameter).
    """
    family = Family(family)
    if mean_target <= 0:
        raise ParameterError(f"mean_target must be positive, got {mean_target}")
    if shape is not None and shape <= 0:
        raise ParameterError(f"shape must be positive, got {shape}")
    if family is Family.EXPONENTIAL:
        return 1.0 / mean_target
    if family is Family.INVERSE_GAUSSIAN:
        return mean_target
    if shape is None:
        raise ParameterError(f"{family.value} requires a shape parameter")
    if family is Family.WEIBULL:
        return mean_target / math.gamma(1.0 + 1.0 / shape)
    return mean_target / shape


def _mean_from_scale(family: Family, shape: float | None, scale: float) -> float:
    if family is Family.EXPONENTIAL:
        return 1.0 / scale
    if family is Family.INVERSE_GAUSSIAN:
        return scale
    if family is Family.WEIBULL:
        return scale * math.gamma(1.0 + 1.0 / shape)
    return scale * shape


@dataclass(frozen=True)
class DistributionSpec:
    """A fully resolved distribution: family, shape, scale and mean.

    Exactly one of ``scale`` and ``mean`` may be given; the other is derived,
    so both are populated on every constructed instance.  ``scale`` holds the
    rate for the exponential family and the mean parameter for the
    inverse-Gaussian family (whose ``shape`` is the usual lambda, default 1).
    """

    family: Family
    shape: float | None = None
    scale: float | None = None
    mean: float | None = None

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, "family", family)
        if family is Family.EXPONENTIAL:
            if self.shape is not None:
                raise ParameterError("the exponential family takes no shape parameter")
        elif family is Family.INVERSE_GAUSSIAN:
            if self.shape is None:
                object.__setattr__(self, "shape", DEFAULT_INVERSE_GAUSSIAN_SHAPE)
        elif self.shape is None:
            raise ParameterError(f"{family.value} requires a shape parameter")
        if self.shape is not None and self.shape <= 0:
            raise ParameterError(f"shape must be positive, got {self.shape}")
        if (self.scale is None) == (self.mean is None):
            raise ParameterError("exactly one of scale and mean must be given")
        if self.scale is None:
            object.__setattr__(self, "scale", scale_for_mean(family, self.shape, self.mean))
        else:
            if self.scale <= 0:
                raise ParameterError(f"scale must be positive, got {self.scale}")
            object.__setattr__(self, "mean", _mean_from_scale(family, self.shape, self.scale))

    def draw(self, gen: np.random.Generator, size: int | None = None):
        """One draw (or ``size`` draws) from the law, advancing ``gen``."""
        if self.family is Family.WEIBULL:
            return self.scale * _standard_exponential(gen, size) ** (1.0 / self.shape)
        if self.family is Family.EXPONENTIAL:
            return _standard_exponential(gen, size) / self.scale
        if self.family is Family.GAMMA:
            return gen.gamma(self.shape, self.scale, size=size)
        return gen.wald(self.scale, self.shape, size=size)


def _standard_exponential(gen: np.random.Generator, size: int | None):
    # Inverse CDF on (0, 1) uniforms; a raw 0.0 would yield a zero variate,
    # which the strictly-positive shock laws must never produce.
    u = gen.random(size)
    if size is None:
        while u == 0.0:
            u = gen.random()
        return -math.log1p(-u)
    zero = u == 0.0
    while zero.any():
        u[zero] = gen.random(int(zero.sum()))
        zero = u == 0.0
    return -np.log1p(-u)


@dataclass(frozen=True)
class RngStream:
    """Deterministic random stream keyed by ``(master_seed, stream_index)``.

    Distinct keys give statistically independent streams; equal keys replay
    the identical sequence.  ``generator`` serves sequential draws; ``spawn``
    hands out substreams that are independent of it and of each other, in a
    stable order (the n-th spawned child is the same on every run).
    """

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= int(self.master_seed) < 2**64:
            raise ParameterError("master_seed must be an unsigned 64-bit integer")
        if int(self.stream_index) < 0:
            raise ParameterError("stream_index must be non-negative")
        seq = np.random.SeedSequence([int(self.master_seed), int(self.stream_index)])
        object.__setattr__(self, "_seq", seq)
        object.__setattr__(self, "_gen", None)

    @property
    def generator(self) -> np.random.Generator:
        if self._gen is None:
            object.__setattr__(self, "_gen", np.random.default_rng(self._seq))
        return self._gen

    def spawn(self, n: int) -> list[np.random.Generator]:
        return [np.random.default_rng(child) for child in self._seq.spawn(n)]


def sample(spec: DistributionSpec, stream: RngStream) -> float:
    """One draw from ``spec``, advancing the stream's sequential generator."""
    return float(spec.draw(stream.generator))


def derive_seed(master_seed: int, index: int) -> int:
    """Child master seed for sweep cell ``index``; stable and collision-free."""
    seq = np.random.SeedSequence([int(master_seed), int(index)])
    return int(seq.generate_state(1, np.uint64)[0])
