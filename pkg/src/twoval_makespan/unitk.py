"""Integral rounding for {1, k} instances.

Solve the flow at the minimum feasible estimate, keep the small jobs' integral
flow assignment, and place every big job on a machine already holding a
nonzero fraction of it. Because each job's fractions sum to 1 while each
machine's big fractions sum to at most 1, Hall's condition guarantees a
matching that gives every machine at most one big job; rounding then raises
any machine load by at most k - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flow import (
    FractionalAssignment,
    build_network,
    extract_assignment,
    max_flow_integral,
    min_feasible_T,
)
from .matching import maximum_bipartite_matching
from .model import ScaledInstance, Schedule


@dataclass(frozen=True)
class UnitKSolution:
    schedule: Schedule
    estimate: int  # minimum feasible sink capacity the schedule was rounded from
    assignment: FractionalAssignment


def match_big_jobs(assignment: FractionalAssignment, scaled: ScaledInstance) -> dict[int, int]:
    """Match every big job to a machine holding a nonzero fraction of it.

    Failure is a bug upstream, never a normal outcome: the flow invariants
    imply Hall's condition for this bipartite graph.
    """
    bigs = scaled.big_jobs()
    adjacency = [assignment.support(j) for j in bigs]
    matched = maximum_bipartite_matching(adjacency)
    result: dict[int, int] = {}
    for job, machine in zip(bigs, matched):
        if machine is None:
            raise RuntimeError(
                f"big job {job} could not be matched; flow invariants are broken upstream"
            )
        result[job] = machine
    return result


def solve_unit_k(scaled: ScaledInstance) -> UnitKSolution | None:
    """Round a {1, k} instance to a schedule with at most one big job per machine.

    Returns None when no estimate admits a demand-meeting flow; the caller
    must then fall back to the additive rounding.
    """
    estimate = min_feasible_T(scaled)
    if estimate is None:
        return None
    network = build_network(scaled, estimate)
    solution = max_flow_integral(network)
    assignment = extract_assignment(network, solution, scaled)

    placed: list[int | None] = [None] * scaled.base.job_count
    for j in scaled.small_jobs():
        placed[j] = assignment.support(j)[0]
    for job, machine in match_big_jobs(assignment, scaled).items():
        placed[job] = machine
    schedule = Schedule(tuple(placed))  # type: ignore[arg-type]

    _check_rounding(scaled, assignment, schedule, estimate)
    return UnitKSolution(schedule=schedule, estimate=estimate, assignment=assignment)


def _check_rounding(
    scaled: ScaledInstance,
    assignment: FractionalAssignment,
    schedule: Schedule,
    estimate: int,
) -> None:
    loads = [0] * scaled.base.machine_count
    big_count = [0] * scaled.base.machine_count
    for j, machine in enumerate(schedule.assignment):
        loads[machine] += scaled.size_int(j)
        if scaled.is_big(j):
            big_count[machine] += 1
        elif assignment.support(j) != (machine,):
            raise RuntimeError(f"small job {j} moved away from its flow assignment")
    for machine in range(scaled.base.machine_count):
        if big_count[machine] > 1:
            raise RuntimeError(f"machine {machine} received {big_count[machine]} big jobs")
        if loads[machine] > estimate + scaled.k - 1:
            raise RuntimeError(
                f"machine {machine} load {loads[machine]} exceeds estimate {estimate} + k - 1"
            )
