"""Compiled fast path for the periodic-change run loop.

This mirrors the reference loop in dynlo.algorithms draw for draw: numba's
implementations of Generator.binomial / integers / random consume the PCG64
stream bit-identically to numpy's, so both engines produce identical traces
from the same seed (asserted by the test suite).  Keep the order of random
draws in sync with the step functions when changing either side.
"""

from __future__ import annotations

import numba
import numpy as np

MODE_EA = 0
MODE_REA = 1
MODE_SMOOTH = 2
MODES = {"ea": MODE_EA, "rea": MODE_REA, "smooth_rea": MODE_SMOOTH}


@numba.njit(cache=True, inline="always")
def _leading_ones(x, z):
    for i in range(x.shape[0]):
        if x[i] != z[i]:
            return i
    return x.shape[0]


@numba.njit(cache=True, inline="always")
def _floyd_subset(rng, n, kk, idx_buf, in_set):
    # Floyd's uniform k-subset; same draw order as core.random_k_subset.
    c = 0
    for j in range(n - kk, n):
        v = int(rng.integers(0, j + 1))
        if in_set[v]:
            idx_buf[c] = j
            in_set[j] = True
        else:
            idx_buf[c] = v
            in_set[v] = True
        c += 1
    for i in range(kk):
        in_set[idx_buf[i]] = False


@numba.njit(cache=True)
def run_dynamic_loop(rng, x0, z0, k, tau, gamma, p, budget, mode, s, global_t):
    n = x0.shape[0]
    z = z0.copy()
    x_best = x0.copy()
    f_best = _leading_ones(x_best, z)

    nslots = gamma + 2
    slots = np.zeros((nslots, n), dtype=np.uint8)
    slot_f = np.full(nslots, -1, dtype=np.int64)  # -1 stands in for -inf
    x_prev = x_best.copy()
    f_threshold = f_best
    reopt = False
    t_since = 0
    sn2 = s * n * n

    trace = np.empty(budget, dtype=np.int32)
    idx_buf = np.empty(n, dtype=np.int64)
    in_set = np.zeros(n, dtype=np.bool_)
    y = np.empty(n, dtype=np.uint8)
    pool = np.empty(nslots, dtype=np.int64)

    for t in range(budget):
        if t != 0 and t % tau == 0:
            for i in range(n):
                x_prev[i] = x_best[i]
            f_threshold = f_best  # fitness under the pre-change target
            _floyd_subset(rng, n, k, idx_buf, in_set)
            for i in range(k):
                z[idx_buf[i]] ^= 1
            f_best = _leading_ones(x_best, z)
            if mode != MODE_EA:
                reopt = True
                t_since = 0
                for i in range(nslots):
                    slot_f[i] = -1
                for i in range(n):
                    slots[0, i] = x_prev[i]
                slot_f[0] = _leading_ones(x_prev, z)

        parent = x_best
        if mode != MODE_EA and reopt:
            npool = 0
            for i in range(nslots):
                if slot_f[i] >= 0:
                    same = True
                    for q in range(n):
                        if slots[i, q] != x_best[q]:
                            same = False
                            break
                    if not same:
                        pool[npool] = i
                        npool += 1
            if npool > 0:
                if mode == MODE_REA:
                    p_greedy = 0.5
                else:
                    tt = t if global_t else t_since
                    p_greedy = tt / sn2
                    if p_greedy > 1.0:
                        p_greedy = 1.0
                if p_greedy < 1.0:
                    greedy = False
                    if p_greedy > 0.0:
                        if rng.random() < p_greedy:
                            greedy = True
                    if not greedy:
                        j = int(rng.integers(0, npool))
                        parent = slots[pool[j]]

        ell = int(rng.binomial(n, p))
        if ell == 0:
            ell = 1
        for i in range(n):
            y[i] = parent[i]
        _floyd_subset(rng, n, ell, idx_buf, in_set)
        for i in range(ell):
            y[idx_buf[i]] ^= 1
        fy = _leading_ones(y, z)
        if fy >= f_best:
            for i in range(n):
                x_best[i] = y[i]
            f_best = fy
        if mode != MODE_EA and reopt:
            d = 0
            for i in range(n):
                if y[i] != x_prev[i]:
                    d += 1
            si = d if d < gamma + 1 else gamma + 1
            if fy >= slot_f[si]:
                for i in range(n):
                    slots[si, i] = y[i]
                slot_f[si] = fy
            if f_best >= f_threshold:
                reopt = False
        t_since += 1
        trace[t] = f_best

    return trace
