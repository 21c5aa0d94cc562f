"""Slot-loop kernel shared by both scheduling policies.

This is the hot path: one call advances a whole simulation, mutating the
SOC, queue, and ledger arrays in place. The arithmetic mirrors the
battery and scheduling modules expression for expression so that kernel
results match the plain library operations bit for bit. Compiled with
numba when available; the same function runs uncompiled otherwise.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a hard dependency, but the
    njit = None      # kernel stays importable (and correct) without it


def _simulate_slots(soc, plan_idx, queue, ledger_hours, uniforms, use_rrc,
                    budget_watts, slot_seconds, plan_watts, coeffs,
                    minutes_to_full, soc_at_zero, soc_at_full, grid_t,
                    grid_soc, grid_len, draw_watts, cum_rates, battery_wh,
                    record, trace_soc, trace_charged, trace_power):
    """Run up to uniforms.shape[0] slots; returns (slots_run, reason).

    reason is 0 when the horizon consumed every slot, 1 when every
    receiver was already full at the top of a slot. soc, queue and
    ledger_hours are updated in place; uniforms holds one value per
    receiver per slot for the discharge draw.
    """
    n = soc.shape[0]
    max_slots = uniforms.shape[0]
    dt_minutes = slot_seconds / 60.0
    dt_hours = slot_seconds / 3600.0

    min_watts = plan_watts[0]
    for j in range(1, plan_watts.shape[0]):
        if plan_watts[j] < min_watts:
            min_watts = plan_watts[j]

    order = np.empty(n, np.int64)
    scratch = np.empty(n, np.int64)
    prio = np.empty(n, np.float64)
    charged = np.empty(n, np.uint8)

    slots_run = 0
    reason = 0

    for s in range(max_slots):
        all_full = True
        for i in range(n):
            if soc[i] < 1.0:
                all_full = False
                break
        if all_full:
            reason = 1
            break

        # 1: selection order for this slot
        if use_rrc:
            for i in range(n):
                order[i] = queue[i]
        else:
            for i in range(n):
                prio[i] = (1.0 - soc[i]) * (plan_idx[i] + 1.0)
                order[i] = i
            # insertion sort: descending priority, ties by ascending id
            for i in range(1, n):
                key = order[i]
                key_p = prio[key]
                j = i - 1
                while j >= 0 and (prio[order[j]] < key_p
                                  or (prio[order[j]] == key_p and order[j] > key)):
                    order[j + 1] = order[j]
                    j -= 1
                order[j + 1] = key

        # 2: greedy scan against the remaining budget
        for i in range(n):
            charged[i] = 0
        residual = budget_watts
        power_used = 0.0
        for k in range(n):
            if residual < min_watts:
                break
            i = order[k]
            if soc[i] >= 1.0:
                continue
            watts = plan_watts[plan_idx[i]]
            if watts <= residual:
                charged[i] = 1
                residual -= watts
                power_used += watts

        # 3: rotate charged receivers to the queue tail (RRC state)
        if use_rrc:
            pos = 0
            for k in range(n):
                i = queue[k]
                if charged[i] == 0:
                    scratch[pos] = i
                    pos += 1
            for k in range(n):
                i = queue[k]
                if charged[i] == 1:
                    scratch[pos] = i
                    pos += 1
            for k in range(n):
                queue[k] = scratch[k]

        # 4: charged receivers advance along their plan's charge curve
        for i in range(n):
            if charged[i] == 1:
                p = plan_idx[i]
                s0 = soc[i]
                if s0 <= soc_at_zero[p]:
                    t0 = 0.0
                elif s0 >= soc_at_full[p]:
                    t0 = minutes_to_full[p]
                else:
                    # bracket on the precomputed grid, then bisect;
                    # identical to ChargeCurve.minutes_at
                    g = grid_len[p]
                    lo_i = 0
                    hi_i = g
                    while lo_i < hi_i:
                        mid_i = (lo_i + hi_i) // 2
                        if grid_soc[p, mid_i] <= s0:
                            lo_i = mid_i + 1
                        else:
                            hi_i = mid_i
                    k2 = lo_i - 1
                    if k2 < 0:
                        k2 = 0
                    if k2 > g - 2:
                        k2 = g - 2
                    lo = grid_t[p, k2]
                    hi = grid_t[p, k2 + 1]
                    c0 = coeffs[p, 0]
                    c1 = coeffs[p, 1]
                    c2 = coeffs[p, 2]
                    c3 = coeffs[p, 3]
                    c4 = coeffs[p, 4]
                    for _ in range(24):
                        mid = 0.5 * (lo + hi)
                        val = (((c0 * mid + c1) * mid + c2) * mid + c3) * mid + c4
                        if val < s0:
                            lo = mid
                        else:
                            hi = mid
                    t0 = 0.5 * (lo + hi)
                t1 = t0 + dt_minutes
                if t1 > minutes_to_full[p]:
                    s1 = 1.0
                else:
                    val = (((coeffs[p, 0] * t1 + coeffs[p, 1]) * t1 + coeffs[p, 2])
                           * t1 + coeffs[p, 3]) * t1 + coeffs[p, 4]
                    if val < 0.0:
                        val = 0.0
                    if val > 1.0:
                        val = 1.0
                    s1 = val
                if s1 < s0:
                    s1 = s0
                soc[i] = s1
                ledger_hours[p] += dt_hours

        # 5: every receiver discharges by its sampled usage draw
        for i in range(n):
            u = uniforms[s, i]
            k3 = 0
            while k3 < cum_rates.shape[0] - 1 and u >= cum_rates[k3]:
                k3 += 1
            drop = draw_watts[k3] * dt_hours / battery_wh
            new_soc = soc[i] - drop
            if new_soc < 0.0:
                new_soc = 0.0
            soc[i] = new_soc

        if record:
            for i in range(n):
                trace_soc[s, i] = soc[i]
                trace_charged[s, i] = charged[i]
            trace_power[s] = power_used

        slots_run = s + 1

    return slots_run, reason


if njit is not None:
    simulate_slots = njit(cache=True)(_simulate_slots)
else:  # pragma: no cover
    simulate_slots = _simulate_slots
