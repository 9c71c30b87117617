"""Pure-Python trajectory kernel; mirror of the compiled extension.

Keep the arithmetic here expression-for-expression identical to _core.pyx:
the backend tests assert bit-identical outputs.
"""

from __future__ import annotations

import math

import numpy as np

MODE_CENSORED = 0
MODE_SHOCK_JUMP = 1
MODE_HEALING_CROSS = 2
MODE_BOUNDARY_DROP = 3


def walk(
    arrivals,
    magnitudes,
    healable,
    drop_times,
    drop_sizes,
    count_drops,
    kappa,
    tau,
    a,
    b,
    c,
    delta,
    n_epochs,
    damage_out=None,
    boundary_out=None,
):
    """Epoch walk over ``t = delta, 2*delta, ..., n_epochs*delta``.

    Returns ``(fail_epoch, shock_count, mode, record_epochs, record_gaps)``
    where ``fail_epoch`` is the 1-based index of the first epoch with damage
    strictly above the effective boundary (-1 if the horizon ends first) and
    the records are the strictly decreasing prefix minima of the
    boundary-damage gap, ending at the failure epoch when one exists.

    The damage recurrence is one decay multiply per epoch plus an exp
    correction per shock arrival/expiry, so a shock's in-sum value drifts
    from the fresh exponential by accumulated rounding only (~1e-13).
    """
    arrivals = list(arrivals)
    magnitudes = list(magnitudes)
    healable = list(healable)
    drop_times = list(drop_times)
    drop_sizes = list(drop_sizes)
    kappa = float(kappa)
    tau = float(tau)
    a = float(a)
    b = float(b)
    c = float(c)
    delta = float(delta)

    n_shocks = len(arrivals)
    n_drops = len(drop_times)
    track_expiry = kappa > 0.0 and math.isfinite(tau)
    step_decay = math.exp(-kappa * delta)
    frozen_factor = math.exp(-kappa * tau) if track_expiry else 1.0
    trace = damage_out is not None

    rec_epochs = []
    rec_gaps = []
    active = 0.0
    frozen = 0.0
    drop_total = 0.0
    i_arr = 0
    i_exp = 0
    i_drop = 0
    count = 0
    min_gap = math.inf
    fail_epoch = -1
    mode = MODE_CENSORED

    for j in range(1, n_epochs + 1):
        t = j * delta
        active = active * step_decay
        new_damage_shock = False
        new_drop = False
        while i_arr < n_shocks and arrivals[i_arr] <= t:
            count += 1
            if healable[i_arr]:
                active = active + magnitudes[i_arr] * math.exp(-kappa * (t - arrivals[i_arr]))
                new_damage_shock = True
            i_arr += 1
        if track_expiry:
            while i_exp < n_shocks and arrivals[i_exp] + tau <= t:
                if healable[i_exp]:
                    active = active - magnitudes[i_exp] * math.exp(-kappa * (t - arrivals[i_exp]))
                    frozen = frozen + magnitudes[i_exp] * frozen_factor
                i_exp += 1
        while i_drop < n_drops and drop_times[i_drop] <= t:
            drop_total = drop_total + drop_sizes[i_drop]
            new_drop = True
            if count_drops:
                count += 1
            i_drop += 1
        damage = active + frozen
        boundary = a + b * t - c * t * t - drop_total
        if trace:
            damage_out[j - 1] = damage
            boundary_out[j - 1] = boundary
        gap = boundary - damage
        if gap < min_gap:
            rec_epochs.append(j)
            rec_gaps.append(gap)
            min_gap = gap
        if damage > boundary:
            fail_epoch = j
            if new_damage_shock:
                mode = MODE_SHOCK_JUMP
            elif new_drop:
                mode = MODE_BOUNDARY_DROP
            else:
                mode = MODE_HEALING_CROSS
            break

    return (
        fail_epoch,
        count,
        mode,
        np.asarray(rec_epochs, dtype=np.int64),
        np.asarray(rec_gaps, dtype=np.float64),
    )
