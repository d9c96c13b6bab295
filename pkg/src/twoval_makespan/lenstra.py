"""Additive-error rounding via exact transportation feasibility.

The fractional relaxation for a load bound T is a transportation problem:
each job supplies its size to its allowed machines and each machine absorbs
at most T. Feasibility is monotone in T and the optimal schedule's makespan
always lies on the finite grid {a*b + c*s : 0 <= a, c <= n} of possible
machine loads, so searching that grid finds a fractional bound no larger
than the integral optimum. Canceling support cycles and rounding the
remaining forest then lands every job integrally while raising each machine
load by at most one job size, i.e. at most b. When the optimum is at least
2b this is a 3/2 approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .flow import FractionalAssignment
from .maxflow import Dinic
from .model import Instance, Schedule, machine_loads, makespan, require_valid


@dataclass(frozen=True)
class LenstraSolution:
    schedule: Schedule
    capacity: Fraction  # minimum feasible fractional load bound that got rounded


def load_grid(instance: Instance) -> list[Fraction]:
    """All candidate machine loads a schedule could produce, sorted ascending."""
    sizes = instance.distinct_sizes()
    n = instance.job_count
    if not sizes:
        return [Fraction(0)]
    if len(sizes) == 1:
        return [sizes[0] * c for c in range(n + 1)]
    small, big = sizes
    return sorted({big * a + small * c for a in range(n + 1) for c in range(n + 1)})


def fractional_assign_plain(instance: Instance, capacity: Fraction) -> FractionalAssignment | None:
    """Fractional assignment with every machine load <= capacity, or None.

    Solved as an exact integral flow after clearing denominators; no big-job
    throttling here, machines may hold any mix of fractions.
    """
    if capacity < 0:
        return None
    n = instance.job_count
    m = instance.machine_count
    denom = math.lcm(
        capacity.denominator, *(job.size.denominator for job in instance.jobs)
    ) if instance.jobs else capacity.denominator
    supplies = [int(job.size * denom) for job in instance.jobs]
    cap_units = int(capacity * denom)

    source = 0
    job0 = 1
    machine0 = 1 + n
    sink = 1 + n + m
    solver = Dinic(sink + 1)
    job_edges: list[list[tuple[int, int]]] = []
    for j in range(n):
        solver.add_edge(source, job0 + j, supplies[j])
    for j in range(n):
        edges = []
        for i in sorted(instance.jobs[j].allowed):
            edges.append((i, solver.add_edge(job0 + j, machine0 + i, supplies[j])))
        job_edges.append(edges)
    for i in range(m):
        solver.add_edge(machine0 + i, sink, cap_units)

    if solver.max_flow(source, sink) != sum(supplies):
        return None
    per_job = []
    for j in range(n):
        fractions = {}
        for machine, edge_id in job_edges[j]:
            units = solver.flow_on(edge_id)
            if units:
                fractions[machine] = Fraction(units, supplies[j])
        per_job.append(fractions)
    return FractionalAssignment(tuple(per_job))


def _weight_maps(assignment: FractionalAssignment, instance: Instance) -> list[dict[int, Fraction]]:
    return [
        {machine: frac * instance.jobs[j].size for machine, frac in assignment.per_job[j].items()}
        for j in range(instance.job_count)
    ]


def _find_support_cycle(weights: list[dict[int, Fraction]]) -> list[tuple[int, int]] | None:
    """A cycle in the bipartite support graph of fractional jobs, as (job, machine) edges."""
    fractional = [j for j, w in enumerate(weights) if len(w) >= 2]
    machine_adj: dict[int, list[int]] = {}
    for j in fractional:
        for i in weights[j]:
            machine_adj.setdefault(i, []).append(j)

    visited: set[tuple[str, int]] = set()
    for start_job in fractional:
        start = ("j", start_job)
        if start in visited:
            continue
        parent: dict[tuple[str, int], tuple[str, int] | None] = {start: None}
        stack = [start]
        visited.add(start)
        while stack:
            node = stack.pop()
            kind, idx = node
            neighbors = (
                [("m", i) for i in sorted(weights[idx])]
                if kind == "j"
                else [("j", j) for j in machine_adj.get(idx, ())]
            )
            for other in neighbors:
                if other == parent[node]:
                    continue
                if other in visited:
                    # trace both nodes up to their common ancestor
                    path_a = _path_to_root(node, parent)
                    path_b = _path_to_root(other, parent)
                    common = None
                    in_b = set(path_b)
                    for candidate in path_a:
                        if candidate in in_b:
                            common = candidate
                            break
                    assert common is not None
                    cycle_nodes = (
                        path_a[: path_a.index(common) + 1]
                        + list(reversed(path_b[: path_b.index(common)]))
                    )
                    return _nodes_to_edges(cycle_nodes)
                visited.add(other)
                parent[other] = node
                stack.append(other)
    return None


def _path_to_root(node, parent):
    path = [node]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _nodes_to_edges(cycle_nodes: list[tuple[str, int]]) -> list[tuple[int, int]]:
    edges = []
    count = len(cycle_nodes)
    for t in range(count):
        a = cycle_nodes[t]
        b = cycle_nodes[(t + 1) % count]
        job = a[1] if a[0] == "j" else b[1]
        machine = a[1] if a[0] == "m" else b[1]
        edges.append((job, machine))
    return edges


def cancel_cycles(assignment: FractionalAssignment, instance: Instance) -> FractionalAssignment:
    """Remove support cycles by circulating weight around each one.

    In weight units every node of a support cycle touches exactly two cycle
    edges with opposite adjustment signs, so job totals and machine loads are
    preserved exactly; each round zeroes at least one support edge, leaving
    the fractional support acyclic.
    """
    weights = _weight_maps(assignment, instance)
    while True:
        cycle = _find_support_cycle(weights)
        if cycle is None:
            break
        delta = min(weights[j][i] for t, (j, i) in enumerate(cycle) if t % 2 == 1)
        for t, (j, i) in enumerate(cycle):
            if t % 2 == 0:
                weights[j][i] += delta
            else:
                weights[j][i] -= delta
                if weights[j][i] == 0:
                    del weights[j][i]
    per_job = tuple(
        {machine: weight / instance.jobs[j].size for machine, weight in weights[j].items()}
        for j in range(instance.job_count)
    )
    return FractionalAssignment(per_job)


def support_is_forest(assignment: FractionalAssignment) -> bool:
    """True when the bipartite support graph of fractional jobs is acyclic."""
    weights = [dict(pj) for pj in assignment.per_job]
    return _find_support_cycle(weights) is None


def round_forest(assignment: FractionalAssignment, instance: Instance) -> Schedule:
    """Round a forest-supported assignment, each machine gaining at most one job.

    Every tree is rooted at its lowest-index machine node; each fractional job
    goes to one of its child machines, so a machine can only receive the job
    directly above it. Jobs with a single support machine go there directly.
    """
    n = instance.job_count
    placed: list[int | None] = [None] * n
    fractional = []
    for j in range(n):
        support = assignment.support(j)
        if not support:
            raise ValueError(f"job {j} has empty support")
        if len(support) == 1:
            placed[j] = support[0]
        else:
            fractional.append(j)

    machine_adj: dict[int, list[int]] = {}
    for j in fractional:
        for i in assignment.support(j):
            machine_adj.setdefault(i, []).append(j)

    seen_jobs: set[int] = set()
    seen_machines: set[int] = set()
    for root in sorted(machine_adj):
        if root in seen_machines:
            continue
        seen_machines.add(root)
        queue = [root]
        while queue:
            machine = queue.pop(0)
            for j in machine_adj[machine]:
                if j in seen_jobs:
                    continue  # the job this machine was discovered through
                seen_jobs.add(j)
                children = [i for i in assignment.support(j) if i != machine]
                placed[j] = min(children)
                for child in children:
                    # a cycle must close through an already-visited machine
                    if child in seen_machines:
                        raise RuntimeError("support graph is not a forest")
                    seen_machines.add(child)
                    queue.append(child)

    if any(p is None for p in placed):
        raise RuntimeError("forest rounding left a job unplaced")
    schedule = Schedule(tuple(placed))  # type: ignore[arg-type]
    _check_forest_rounding(assignment, instance, schedule)
    return schedule


def _check_forest_rounding(
    assignment: FractionalAssignment, instance: Instance, schedule: Schedule
) -> None:
    frac_loads = [Fraction(0)] * instance.machine_count
    for j in range(instance.job_count):
        for machine, frac in assignment.per_job[j].items():
            frac_loads[machine] += frac * instance.jobs[j].size
    received: dict[int, list[int]] = {}
    for j, machine in enumerate(schedule.assignment):
        if not assignment.is_integral(j):
            received.setdefault(machine, []).append(j)
    loads = machine_loads(instance, schedule)
    for machine, jobs in received.items():
        if len(jobs) > 1:
            raise RuntimeError(f"machine {machine} received {len(jobs)} rounded jobs")
        if loads[machine] > frac_loads[machine] + instance.jobs[jobs[0]].size:
            raise RuntimeError(
                f"machine {machine} load grew by more than one job size during rounding"
            )


def min_feasible_fractional(instance: Instance) -> tuple[Fraction, FractionalAssignment]:
    """Smallest grid load bound with a feasible fractional assignment, plus one."""
    grid = load_grid(instance)
    lo, hi = 0, len(grid) - 1
    best = fractional_assign_plain(instance, grid[hi])
    if best is None:
        raise RuntimeError("transportation problem infeasible at the full-load bound")
    while lo < hi:
        mid = (lo + hi) // 2
        candidate = fractional_assign_plain(instance, grid[mid])
        if candidate is not None:
            best = candidate
            hi = mid
        else:
            lo = mid + 1
    return grid[lo], best


def lenstra_solve(instance: Instance) -> LenstraSolution:
    """Full pipeline: grid search, cycle canceling, forest rounding.

    The result's makespan is at most capacity + b, which the function checks
    on every run.
    """
    require_valid(instance)
    capacity, assignment = min_feasible_fractional(instance)
    canceled = cancel_cycles(assignment, instance)
    schedule = round_forest(canceled, instance)
    sizes = instance.distinct_sizes()
    big = sizes[-1] if sizes else Fraction(0)
    if makespan(instance, schedule) > capacity + big:
        raise RuntimeError("forest rounding exceeded the additive bound")
    return LenstraSolution(schedule=schedule, capacity=capacity)
