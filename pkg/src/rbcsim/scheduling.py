"""Power allocation policies for one charging time slot.

Two policies share the same greedy scan over a fixed receiver ordering:
high-priority-charge (HPC) orders receivers by descending priority score
each slot, while round-robin-charge (RRC) keeps an access-order queue
and rotates freshly charged receivers to its tail. Both continue past a
receiver whose plan power does not fit the remaining budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .pricing import PricingPlan


@dataclass
class Receiver:
    id: int
    soc: float
    plan: PricingPlan
    arrival_index: int
    full_flag: bool = False
    current_draw: float = 0.0


def refresh_full_flags(receivers: Iterable[Receiver]) -> None:
    """Recompute full flags from current SOC (full means soc = 1.0)."""
    for r in receivers:
        r.full_flag = r.soc >= 1.0


def priority(receiver: Receiver) -> float:
    """Scheduling score: emptier batteries on pricier plans come first."""
    return (1.0 - receiver.soc) * receiver.plan.priority_level


@dataclass(frozen=True)
class AllocationResult:
    charged_ids: frozenset[int]
    power_used: float
    residual: float


def _greedy_scan(ordered: Sequence[Receiver], budget_watts: float):
    # Shared scan: charge every non-full receiver whose plan power still
    # fits, keep scanning past the ones that do not.
    residual = float(budget_watts)
    charged: list[int] = []
    for r in ordered:
        if r.full_flag:
            continue
        watts = r.plan.charge_watts
        if watts <= residual:
            charged.append(r.id)
            residual -= watts
    return charged, residual


def allocate_hpc(receivers: Sequence[Receiver], budget_watts: float,
                 priority_fn: Callable[[Receiver], float] | None = None) -> AllocationResult:
    """Allocate the budget to receivers in descending priority order.

    Ties are broken by ascending receiver id so allocation is
    deterministic. `priority_fn` overrides the default score (used to
    check scale invariance; the charged set must not depend on positive
    rescaling of the scores).
    """
    if budget_watts < 0.0:
        raise ValueError("budget must be nonnegative")
    score = priority if priority_fn is None else priority_fn
    ranked = sorted(receivers, key=lambda r: (-score(r), r.id))
    charged, residual = _greedy_scan(ranked, budget_watts)
    return AllocationResult(frozenset(charged), float(budget_watts) - residual, residual)


def allocate_rrc(queue: Sequence[Receiver], budget_watts: float):
    """Allocate the budget in queue order and rotate charged receivers.

    Returns the allocation plus the next slot's queue: receivers that
    were charged move to the tail, keeping their relative order; everyone
    else keeps their position.
    """
    if budget_watts < 0.0:
        raise ValueError("budget must be nonnegative")
    charged, residual = _greedy_scan(queue, budget_watts)
    charged_set = frozenset(charged)
    kept = [r for r in queue if r.id not in charged_set]
    moved = [r for r in queue if r.id in charged_set]
    result = AllocationResult(charged_set, float(budget_watts) - residual, residual)
    return result, kept + moved
