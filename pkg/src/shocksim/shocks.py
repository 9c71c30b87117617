"""Shock-train generation for the scenario variants.

Train builders spawn substreams from the replication stream in a fixed order
(inter-arrivals, then magnitudes, then any marking or second-train streams),
so trains built from the same stream share their leading shocks no matter how
many shocks a variant asks for.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import DistributionSpec, RngStream
from .errors import ParameterError

_HORIZON_CHUNK = 128


@dataclass(frozen=True, eq=False)
class ShockTrain:
    """Arrival epochs, damage magnitudes and healability flags, one per shock."""

    arrivals: np.ndarray
    magnitudes: np.ndarray
    healable: np.ndarray

    def __post_init__(self):
        arrivals = np.ascontiguousarray(self.arrivals, dtype=np.float64)
        magnitudes = np.ascontiguousarray(self.magnitudes, dtype=np.float64)
        healable = np.ascontiguousarray(self.healable, dtype=bool)
        if not (arrivals.shape == magnitudes.shape == healable.shape) or arrivals.ndim != 1:
            raise ParameterError("arrivals, magnitudes and healable must be 1-d and equally long")
        if arrivals.size:
            if arrivals[0] <= 0 or np.any(np.diff(arrivals) <= 0):
                raise ParameterError("arrivals must be positive and strictly increasing")
            if np.any(magnitudes <= 0):
                raise ParameterError("magnitudes must be positive")
        object.__setattr__(self, "arrivals", arrivals)
        object.__setattr__(self, "magnitudes", magnitudes)
        object.__setattr__(self, "healable", healable)

    def __len__(self) -> int:
        return int(self.arrivals.size)


def generate_train(
    inter_arrival: DistributionSpec,
    magnitude: DistributionSpec,
    count: int,
    stream: RngStream,
) -> ShockTrain:
    """Fixed-count train: ``count`` shocks, all healable.

    Arrivals are the cumulative sums of IID inter-arrival draws; magnitudes
    are IID draws from their own substream.
    """
    if count < 1:
        raise ParameterError(f"count must be at least 1, got {count}")
    x_gen, y_gen = stream.spawn(2)
    gaps = np.asarray(inter_arrival.draw(x_gen, count), dtype=np.float64)
    mags = np.asarray(magnitude.draw(y_gen, count), dtype=np.float64)
    return ShockTrain(np.cumsum(gaps), mags, np.ones(count, dtype=bool))


def _horizon_train(
    inter_arrival: DistributionSpec,
    magnitude: DistributionSpec,
    horizon: float,
    x_gen: np.random.Generator,
    y_gen: np.random.Generator,
    healable: bool,
) -> ShockTrain:
    # Chunked draws carry the running arrival offset forward, which matches a
    # single cumulative sum exactly, so fixed-count and horizon-based trains
    # from the same substreams agree on their common prefix.
    pieces = []
    offset = 0.0
    while True:
        gaps = np.asarray(inter_arrival.draw(x_gen, _HORIZON_CHUNK), dtype=np.float64)
        arrivals = offset + np.cumsum(gaps)
        kept = int(np.searchsorted(arrivals, horizon, side="right"))
        pieces.append(arrivals[:kept])
        if kept < arrivals.size:
            break
        offset = float(arrivals[-1])
    arrivals = np.concatenate(pieces)
    n = arrivals.size
    mags = np.asarray(magnitude.draw(y_gen, n), dtype=np.float64) if n else np.empty(0)
    return ShockTrain(arrivals, mags, np.full(n, healable, dtype=bool))


def mark_nonhealable(train: ShockTrain, p: float, stream: RngStream) -> ShockTrain:
    """Independently flip each healable flag to False with probability ``p``.

    Only valid on an unmarked train (all flags True): re-marking would
    re-randomize the classification.
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    if not train.healable.all():
        raise ParameterError("train already carries nonhealable marks")
    (gen,) = stream.spawn(1)
    u = gen.random(len(train))
    return ShockTrain(train.arrivals, train.magnitudes, u >= p)


def generate_two_streams(
    healable_specs: tuple[DistributionSpec, DistributionSpec],
    nonhealable_specs: tuple[DistributionSpec, DistributionSpec],
    horizon: float,
    stream: RngStream,
) -> tuple[ShockTrain, ShockTrain]:
    """Two independent trains covering ``[0, horizon]``: healable, nonhealable.

    Each train's generation stops at the first arrival beyond the horizon
    (that arrival is discarded).  The healable train uses the stream's first
    two substreams, exactly like :func:`generate_train`.
    """
    if horizon <= 0:
        raise ParameterError(f"horizon must be positive, got {horizon}")
    hx, hy, nx, ny = stream.spawn(4)
    healable = _horizon_train(*healable_specs, horizon, hx, hy, healable=True)
    nonhealable = _horizon_train(*nonhealable_specs, horizon, nx, ny, healable=False)
    return healable, nonhealable
