"""Solvers for instances where every job is eligible on at most two machines.

With 2-machine eligibility a big job's flow extraction supports at most two
machines, so either one machine holds more than half of it or two machines
hold exactly half each. Jobs of the first kind go to their majority machine;
the half/half jobs form a multigraph on machines with maximum degree 2 (a
third half would overload a machine's big-fraction budget), whose components
are paths and cycles and therefore admit an orientation giving every machine
at most one of them. The rounding increases any machine load by at most k/2,
a 3/2 approximation for {1, k} sizes.

For arbitrary two-size weights, alpha >= 2 races the two reductions against
the additive rounding; alpha in (1, 2) races a one-job-per-machine matching,
the additive rounding, a forest rounding of the plain fractional solution,
and the small-down reduction. Either way the best branch is within 1.652 of
the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import guarantee_report
from .flow import (
    FractionalAssignment,
    build_network,
    extract_assignment,
    max_flow_integral,
    min_feasible_T,
)
from .lenstra import cancel_cycles, lenstra_solve, min_feasible_fractional, round_forest
from .matching import maximum_bipartite_matching
from .model import (
    Instance,
    ScaledInstance,
    Schedule,
    is_graph_balancing,
    normalize,
    require_valid,
    scale_to_integer,
)
from .twovalued import (
    ADDITIVE,
    SMALL_DOWN,
    SMALL_UP,
    UNIFORM,
    SolveResult,
    build_reduced,
    lift,
    pick_best,
)
from .unitk import UnitKSolution

MATCHING = "matching"
FOREST = "forest"


@dataclass(frozen=True)
class HalfEdgeGraph:
    """Big jobs split exactly half/half, as edges between their two machines."""

    edges: tuple[tuple[int, int, int], ...]  # (job, machine u, machine v)

    def vertices(self) -> tuple[int, ...]:
        seen = {v for _, u, w in self.edges for v in (u, w)}
        return tuple(sorted(seen))


def _require_gb(instance: Instance) -> None:
    if not is_graph_balancing(instance):
        raise ValueError("not a graph-balancing instance: some job allows more than 2 machines")


def orient_components(graph: HalfEdgeGraph) -> dict[int, int]:
    """Choose a head machine per edge so every machine heads at most one edge.

    Components must be paths or cycles (max degree 2). Paths are directed away
    from their lowest-index endpoint; cycles are walked from their lowest
    vertex starting with the lowest edge id, giving a bijection of edges onto
    vertices. Deterministic for identical inputs.
    """
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for edge_id, (_, u, v) in enumerate(graph.edges):
        adjacency.setdefault(u, []).append((edge_id, v))
        adjacency.setdefault(v, []).append((edge_id, u))
    for vertex, incident in adjacency.items():
        if len(incident) > 2:
            raise ValueError(f"machine {vertex} has {len(incident)} half-assigned big jobs")

    heads: dict[int, int] = {}  # edge id -> head vertex
    used_edges: set[int] = set()

    def walk(start: int) -> None:
        current = start
        while True:
            options = [(e, other) for e, other in adjacency[current] if e not in used_edges]
            if not options:
                return
            edge_id, other = min(options)
            used_edges.add(edge_id)
            heads[edge_id] = other
            current = other

    # paths first: start from endpoints (degree 1) in index order
    for vertex in sorted(adjacency):
        if len(adjacency[vertex]) == 1:
            walk(vertex)
    # remaining components are cycles
    for vertex in sorted(adjacency):
        if any(e not in used_edges for e, _ in adjacency[vertex]):
            walk(vertex)

    _check_orientation(graph, heads)
    return {graph.edges[edge_id][0]: head for edge_id, head in heads.items()}


def _check_orientation(graph: HalfEdgeGraph, heads: dict[int, int]) -> None:
    if len(heads) != len(graph.edges):
        raise RuntimeError("orientation left an edge without a head")
    seen: set[int] = set()
    for head in heads.values():
        if head in seen:
            raise RuntimeError(f"machine {head} heads two half-assigned big jobs")
        seen.add(head)


def gb_solve_unit_k(scaled: ScaledInstance) -> UnitKSolution | None:
    """{1, k} rounding specialized to 2-machine eligibility; None means fall back."""
    _require_gb(scaled.base)
    estimate = min_feasible_T(scaled)
    if estimate is None:
        return None
    network = build_network(scaled, estimate)
    solution = max_flow_integral(network)
    assignment = extract_assignment(network, solution, scaled)

    placed: list[int | None] = [None] * scaled.base.job_count
    for j in scaled.small_jobs():
        placed[j] = assignment.support(j)[0]

    half = Fraction(1, 2)
    half_edges: list[tuple[int, int, int]] = []
    for j in scaled.big_jobs():
        support = assignment.support(j)
        if len(support) > 2:
            raise RuntimeError(f"big job {j} supported on {len(support)} machines")
        if len(support) == 1:
            placed[j] = support[0]
            continue
        u, v = support
        fu = assignment.fraction(j, u)
        if fu > half:
            placed[j] = u
        elif fu < half:
            placed[j] = v
        else:
            half_edges.append((j, u, v))

    for job, head in orient_components(HalfEdgeGraph(tuple(half_edges))).items():
        placed[job] = head

    schedule = Schedule(tuple(placed))  # type: ignore[arg-type]
    _check_gb_rounding(scaled, assignment, schedule, estimate)
    return UnitKSolution(schedule=schedule, estimate=estimate, assignment=assignment)


def _check_gb_rounding(
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
        if 2 * loads[machine] > 2 * estimate + scaled.k:
            raise RuntimeError(
                f"machine {machine} load {loads[machine]} exceeds estimate {estimate} + k/2"
            )


def gb_perfect_matching_opt1(instance: Instance) -> Schedule | None:
    """Schedule with one job per machine if one exists, via maximum matching.

    Intended for normalized instances with small size above 1/2, where any
    two jobs together overload a machine, so a makespan-1 schedule is exactly
    a perfect matching of jobs into machines.
    """
    _require_gb(instance)
    adjacency = [sorted(job.allowed) for job in instance.jobs]
    matched = maximum_bipartite_matching(adjacency)
    if any(machine is None for machine in matched):
        return None
    return Schedule(tuple(matched))  # type: ignore[arg-type]


def gb_forest_round(instance: Instance, assignment: FractionalAssignment) -> Schedule:
    """Bottom-up forest rounding of a cycle-free fractional assignment.

    Each tree's pending fractional job is absorbed by a machine below it, so
    every machine gains at most one job; rejects cyclic support.
    """
    _require_gb(instance)
    return round_forest(assignment, instance)


def gb_solve_two_valued(instance: Instance) -> SolveResult:
    """Race the branches appropriate for alpha and keep the best schedule."""
    require_valid(instance)
    _require_gb(instance)
    norm, alpha = normalize(instance)
    branches: dict[str, Schedule] = {}

    if alpha == 1:
        result = gb_solve_unit_k(scale_to_integer(norm))
        if result is None:
            raise RuntimeError("uniform-size flow unexpectedly infeasible")
        branches[UNIFORM] = result.schedule
        branches[ADDITIVE] = lenstra_solve(instance).schedule
    elif alpha >= 2:
        reductions = [SMALL_UP] if alpha.denominator == 1 else [SMALL_DOWN, SMALL_UP]
        for which in reductions:
            reduced = build_reduced(norm, alpha, which)
            result = gb_solve_unit_k(scale_to_integer(reduced.instance))
            if result is None:
                continue
            schedule, _ = lift(result.schedule, reduced, instance)
            branches[which] = schedule
        branches[ADDITIVE] = lenstra_solve(instance).schedule
    else:  # 1 < alpha < 2
        matched = gb_perfect_matching_opt1(norm)
        if matched is not None:
            branches[MATCHING] = matched
        reduced = build_reduced(norm, alpha, SMALL_DOWN)  # k = 2
        result = gb_solve_unit_k(scale_to_integer(reduced.instance))
        if result is not None:
            schedule, _ = lift(result.schedule, reduced, instance)
            branches[SMALL_DOWN] = schedule
        _, fractional = min_feasible_fractional(instance)
        branches[FOREST] = gb_forest_round(instance, cancel_cycles(fractional, instance))
        branches[ADDITIVE] = lenstra_solve(instance).schedule

    chosen, best, branch_makespans = pick_best(instance, branches)
    return SolveResult(
        schedule=branches[chosen],
        makespan=best,
        report=guarantee_report(alpha, graph_balancing=True),
        branch_makespans=branch_makespans,
        chosen=chosen,
    )
