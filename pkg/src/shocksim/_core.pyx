# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled trajectory kernel; pure-Python mirror in _core_py.py.

Any arithmetic change here must be copied verbatim to _core_py.walk: the
backend tests assert bit-identical outputs.  Built with -ffp-contract=off so
the C arithmetic rounds exactly like CPython floats.
"""

from libc.math cimport exp, isfinite

import numpy as np

MODE_CENSORED = 0
MODE_SHOCK_JUMP = 1
MODE_HEALING_CROSS = 2
MODE_BOUNDARY_DROP = 3


def walk(
    double[::1] arrivals,
    double[::1] magnitudes,
    unsigned char[::1] healable,
    double[::1] drop_times,
    double[::1] drop_sizes,
    bint count_drops,
    double kappa,
    double tau,
    double a,
    double b,
    double c,
    double delta,
    Py_ssize_t n_epochs,
    double[::1] damage_out=None,
    double[::1] boundary_out=None,
):
    """Epoch walk; see _core_py.walk for the full contract."""
    cdef Py_ssize_t n_shocks = arrivals.shape[0]
    cdef Py_ssize_t n_drops = drop_times.shape[0]
    cdef bint track_expiry = kappa > 0.0 and isfinite(tau)
    cdef double step_decay = exp(-kappa * delta)
    cdef double frozen_factor = exp(-kappa * tau) if track_expiry else 1.0
    cdef bint trace = damage_out is not None

    rec_epochs_arr = np.empty(n_epochs, dtype=np.int64)
    rec_gaps_arr = np.empty(n_epochs, dtype=np.float64)
    cdef long long[::1] rec_epochs = rec_epochs_arr
    cdef double[::1] rec_gaps = rec_gaps_arr
    cdef Py_ssize_t n_rec = 0

    cdef double active = 0.0
    cdef double frozen = 0.0
    cdef double drop_total = 0.0
    cdef Py_ssize_t i_arr = 0
    cdef Py_ssize_t i_exp = 0
    cdef Py_ssize_t i_drop = 0
    cdef long long count = 0
    cdef double min_gap = float("inf")
    cdef Py_ssize_t fail_epoch = -1
    cdef int mode = MODE_CENSORED

    cdef Py_ssize_t j
    cdef double t, damage, boundary, gap
    cdef bint new_damage_shock, new_drop

    for j in range(1, n_epochs + 1):
        t = j * delta
        active = active * step_decay
        new_damage_shock = False
        new_drop = False
        while i_arr < n_shocks and arrivals[i_arr] <= t:
            count += 1
            if healable[i_arr]:
                active = active + magnitudes[i_arr] * exp(-kappa * (t - arrivals[i_arr]))
                new_damage_shock = True
            i_arr += 1
        if track_expiry:
            while i_exp < n_shocks and arrivals[i_exp] + tau <= t:
                if healable[i_exp]:
                    active = active - magnitudes[i_exp] * exp(-kappa * (t - arrivals[i_exp]))
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
            rec_epochs[n_rec] = j
            rec_gaps[n_rec] = gap
            n_rec += 1
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
        int(fail_epoch),
        int(count),
        int(mode),
        rec_epochs_arr[:n_rec].copy(),
        rec_gaps_arr[:n_rec].copy(),
    )
