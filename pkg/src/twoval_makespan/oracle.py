"""Brute-force exact optimum, the ground truth for every ratio check.

Only meant for desk-scale instances; the search is depth-first over
job -> machine choices with load-based pruning, plus a pruning-free
enumerator used to cross-validate the pruned one on tiny instances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .model import Instance, Schedule, makespan, require_valid

DEFAULT_NODE_BUDGET = 10_000_000


class BudgetExceeded(Exception):
    """Raised when the enumeration hits its node budget."""

    def __init__(self, nodes: int):
        super().__init__(f"oracle search exceeded its budget of {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class OracleResult:
    opt_makespan: Fraction
    witness: Schedule


@dataclass(frozen=True)
class RatioCheck:
    passed: bool
    ratio: Fraction
    opt_makespan: Fraction
    witness: Schedule


def _integer_sizes(instance: Instance) -> tuple[list[int], int]:
    denom = math.lcm(*(job.size.denominator for job in instance.jobs)) if instance.jobs else 1
    return [int(job.size * denom) for job in instance.jobs], denom


def brute_force_opt(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET) -> OracleResult:
    """Exact optimum by pruned depth-first search, deterministic in input order."""
    require_valid(instance)
    n = instance.job_count
    if n == 0:
        return OracleResult(Fraction(0), Schedule(()))
    sizes, denom = _integer_sizes(instance)
    allowed = [sorted(job.allowed) for job in instance.jobs]
    loads = [0] * instance.machine_count
    current = [0] * n
    best_value: int | None = None
    best_assign: tuple[int, ...] | None = None
    nodes = 0

    def search(idx: int, current_max: int) -> None:
        nonlocal best_value, best_assign, nodes
        if idx == n:
            if best_value is None or current_max < best_value:
                best_value = current_max
                best_assign = tuple(current)
            return
        for machine in allowed[idx]:
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(node_budget)
            new_load = loads[machine] + sizes[idx]
            new_max = max(current_max, new_load)
            if best_value is not None and new_max >= best_value:
                continue
            loads[machine] = new_load
            current[idx] = machine
            search(idx + 1, new_max)
            loads[machine] -= sizes[idx]

    search(0, 0)
    assert best_value is not None and best_assign is not None
    return OracleResult(Fraction(best_value, denom), Schedule(best_assign))


def enumerate_opt(instance: Instance) -> OracleResult:
    """Pruning-free exhaustive optimum; cross-check for the pruned search."""
    require_valid(instance)
    n = instance.job_count
    if n == 0:
        return OracleResult(Fraction(0), Schedule(()))
    sizes, denom = _integer_sizes(instance)
    allowed = [sorted(job.allowed) for job in instance.jobs]
    best_value: int | None = None
    best_assign: tuple[int, ...] | None = None
    for combo in itertools.product(*allowed):
        loads = [0] * instance.machine_count
        for job_idx, machine in enumerate(combo):
            loads[machine] += sizes[job_idx]
        value = max(loads)
        if best_value is None or value < best_value:
            best_value = value
            best_assign = combo
    assert best_value is not None and best_assign is not None
    return OracleResult(Fraction(best_value, denom), Schedule(best_assign))


def verify_ratio(
    instance: Instance,
    schedule: Schedule,
    bound: Fraction,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> RatioCheck:
    """Exact-rational check that a schedule is within `bound` times the optimum."""
    value = makespan(instance, schedule)
    result = brute_force_opt(instance, node_budget)
    if result.opt_makespan == 0:
        ratio = Fraction(1)
        passed = value == 0
    else:
        ratio = value / result.opt_makespan
        passed = value <= bound * result.opt_makespan
    return RatioCheck(passed=passed, ratio=ratio, opt_makespan=result.opt_makespan, witness=result.witness)
