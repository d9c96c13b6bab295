"""Best-of-branches solver for two-size instances with arbitrary rational sizes.

Normalize so sizes are {1/alpha, 1}, then race three branches and keep the
smallest makespan in original units:

  small-down  replace the small size by 1/ceil(alpha), solve the {1, k} flow
              rounding with k = ceil(alpha), lift back (factor f1)
  small-up    replace it by 1/floor(alpha), k = floor(alpha), lift back (f2)
  additive    transportation rounding on the original sizes, additive error
              at most the big size

The reductions carry the bound min(1 + f1 - 1/alpha, 1/f2 + 1 - 1/floor(alpha))
whenever the optimum is below twice the big size; outside that regime the
additive branch is a 3/2 approximation. The branches share nothing mutable
and may run concurrently; the merge is a pure argmin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bounds import GuaranteeReport, guarantee_report
from .lenstra import lenstra_solve
from .model import (
    Instance,
    Job,
    Schedule,
    machine_loads,
    makespan,
    normalize,
    require_valid,
    scale_to_integer,
)
from .unitk import UnitKSolution, solve_unit_k

SMALL_DOWN = "small-down"  # small size lowered to 1/ceil(alpha)
SMALL_UP = "small-up"      # small size raised to 1/floor(alpha)
ADDITIVE = "additive"
UNIFORM = "uniform"        # single-size instances, solved exactly by the flow


@dataclass(frozen=True)
class ReducedInstance:
    which: str
    instance: Instance  # normalized sizes with the small size replaced
    factor: Fraction    # original small size / reduced small size


@dataclass(frozen=True)
class SolveResult:
    schedule: Schedule
    makespan: Fraction
    report: GuaranteeReport
    branch_makespans: dict[str, Fraction]
    chosen: str


def build_reduced(normalized: Instance, alpha: Fraction, which: str) -> ReducedInstance:
    """Replace small sizes by the nearest unit fraction, up or down in size."""
    if which == SMALL_DOWN:
        denom = math.ceil(alpha)
    elif which == SMALL_UP:
        denom = math.floor(alpha)
    else:
        raise ValueError(f"unknown reduction {which!r}")
    new_small = Fraction(1, denom)
    jobs = tuple(
        job if job.size == 1 else Job(new_small, job.allowed) for job in normalized.jobs
    )
    return ReducedInstance(
        which=which,
        instance=Instance(normalized.machine_count, jobs),
        factor=Fraction(denom) / alpha,
    )


def lift(schedule: Schedule, reduced: ReducedInstance, original: Instance) -> tuple[Schedule, Fraction]:
    """Evaluate a reduced-instance schedule under the original sizes.

    Allowed sets are shared across the reduction, so the assignment carries
    over unchanged; only the makespan needs recomputing.
    """
    machine_loads(reduced.instance, schedule)  # validates the schedule
    return schedule, makespan(original, schedule)


def pick_best(
    instance: Instance, branches: dict[str, Schedule]
) -> tuple[str, Fraction, dict[str, Fraction]]:
    """Argmin over branch schedules by original-unit makespan, first name wins ties."""
    branch_makespans = {name: makespan(instance, sched) for name, sched in branches.items()}
    chosen = min(branch_makespans, key=lambda name: branch_makespans[name])
    return chosen, branch_makespans[chosen], branch_makespans


def solve_two_valued(instance: Instance) -> SolveResult:
    """Race the reductions and the additive rounding; certify the branch bound."""
    require_valid(instance)
    norm, alpha = normalize(instance)
    branches: dict[str, Schedule] = {}

    if alpha == 1:
        result = solve_unit_k(scale_to_integer(norm))
        if result is None:  # single-size flow always meets demand at the top estimate
            raise RuntimeError("uniform-size flow unexpectedly infeasible")
        branches[UNIFORM] = result.schedule
    else:
        reductions = [SMALL_UP] if alpha.denominator == 1 else [SMALL_DOWN, SMALL_UP]
        for which in reductions:
            reduced = build_reduced(norm, alpha, which)
            result = solve_unit_k(scale_to_integer(reduced.instance))
            if result is None:
                continue
            schedule, _ = lift(result.schedule, reduced, instance)
            if which == SMALL_DOWN:
                _check_lifted_loads(norm, alpha, reduced, result)
            branches[which] = schedule
    branches[ADDITIVE] = lenstra_solve(instance).schedule

    chosen, best, branch_makespans = pick_best(instance, branches)
    return SolveResult(
        schedule=branches[chosen],
        makespan=best,
        report=guarantee_report(alpha),
        branch_makespans=branch_makespans,
        chosen=chosen,
    )


def _check_lifted_loads(
    norm: Instance, alpha: Fraction, reduced: ReducedInstance, result: UnitKSolution
) -> None:
    """Big-job machines obey load <= 1 + (T1 - 1/ceil(alpha)) * f1 in normalized units."""
    ceil_a = math.ceil(alpha)
    t_norm = Fraction(result.estimate, ceil_a)
    cap = 1 + (t_norm - Fraction(1, ceil_a)) * reduced.factor
    loads = machine_loads(norm, result.schedule)
    for j, machine in enumerate(result.schedule.assignment):
        if norm.jobs[j].size == 1 and loads[machine] > cap:
            raise RuntimeError(
                f"machine {machine} lifted load {loads[machine]} exceeds {cap}"
            )
