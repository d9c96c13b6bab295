"""Layered flow network for {1, k} instances and fractional-assignment extraction.

Layout: source -> one node per job -> per-machine throttle nodes (big jobs
only) -> machine nodes -> sink. Small jobs connect straight to their machine
nodes with unit arcs; big jobs route through the throttle node v_{i,b} whose
outgoing capacity k caps the total big-job flow entering machine i. A flow
meeting the full demand (the sum of all sizes) therefore yields a fractional
assignment in which small jobs are integral, big fractions are multiples of
1/k, and each machine carries at most one big job's worth of big fractions.

The sink-side capacity is the makespan estimate; feasibility is monotone in
it, so the smallest feasible estimate is found by binary search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .maxflow import Dinic
from .model import ScaledInstance


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int


@dataclass(frozen=True)
class FlowNetwork:
    node_count: int
    source: int
    sink: int
    arcs: tuple[Arc, ...]
    demand: int
    # per job: ((machine, arc index), ...) for the job's outgoing arcs,
    # pointing at the throttle layer for big jobs and at machine nodes for small ones
    job_arcs: tuple[tuple[tuple[int, int], ...], ...]


@dataclass(frozen=True)
class FlowSolution:
    flows: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class FractionalAssignment:
    """Per-job machine fractions, each job's fractions summing to 1."""

    per_job: tuple[dict[int, Fraction], ...]

    @property
    def job_count(self) -> int:
        return len(self.per_job)

    def fraction(self, job: int, machine: int) -> Fraction:
        return self.per_job[job].get(machine, Fraction(0))

    def support(self, job: int) -> tuple[int, ...]:
        return tuple(sorted(self.per_job[job]))

    def is_integral(self, job: int) -> bool:
        return len(self.per_job[job]) == 1


def build_network(scaled: ScaledInstance, estimate: int) -> FlowNetwork:
    """Construct the layered network for a makespan estimate (sink arc capacity)."""
    if estimate < 0:
        raise ValueError("estimate must be nonnegative")
    base = scaled.base
    n = base.job_count
    m = base.machine_count
    source = 0
    job0 = 1
    throttle0 = 1 + n
    machine0 = 1 + n + m
    sink = 1 + n + 2 * m

    arcs: list[Arc] = []
    for j in range(n):
        arcs.append(Arc(source, job0 + j, scaled.size_int(j)))
    job_arcs: list[tuple[tuple[int, int], ...]] = []
    for j in range(n):
        entries = []
        big = scaled.is_big(j)
        for i in sorted(base.jobs[j].allowed):
            if big:
                arcs.append(Arc(job0 + j, throttle0 + i, scaled.k))
            else:
                arcs.append(Arc(job0 + j, machine0 + i, 1))
            entries.append((i, len(arcs) - 1))
        job_arcs.append(tuple(entries))
    for i in range(m):
        arcs.append(Arc(throttle0 + i, machine0 + i, scaled.k))
    for i in range(m):
        arcs.append(Arc(machine0 + i, sink, estimate))

    return FlowNetwork(
        node_count=sink + 1,
        source=source,
        sink=sink,
        arcs=tuple(arcs),
        demand=scaled.total_size(),
        job_arcs=tuple(job_arcs),
    )


def max_flow_integral(network: FlowNetwork) -> FlowSolution:
    """Integral maximum flow over the network's arcs, deterministic per input."""
    solver = Dinic(network.node_count)
    edge_ids = [solver.add_edge(a.tail, a.head, a.capacity) for a in network.arcs]
    value = solver.max_flow(network.source, network.sink)
    flows = tuple(solver.flow_on(eid) for eid in edge_ids)
    return FlowSolution(flows=flows, value=value)


def _feasible(scaled: ScaledInstance, estimate: int) -> bool:
    network = build_network(scaled, estimate)
    return max_flow_integral(network).value == network.demand


def min_feasible_T(scaled: ScaledInstance) -> int | None:
    """Smallest integer estimate in [max size, total size] meeting the demand.

    Returns None when no estimate works, i.e. the big jobs cannot be spread
    with at most one big job's worth per machine; every schedule of such an
    instance stacks two big jobs somewhere and the caller must fall back to
    the additive rounding.
    """
    if scaled.base.job_count == 0:
        return 0
    lo = scaled.max_size()
    hi = scaled.total_size()
    if not _feasible(scaled, hi):
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(scaled, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def extract_assignment(
    network: FlowNetwork, flow: FlowSolution, scaled: ScaledInstance
) -> FractionalAssignment:
    """Read job fractions off a demand-meeting integral flow.

    Each big job's flow into a throttle node exits only toward that machine,
    so apportioning the throttle->machine arc by inflow gives the job exactly
    its own units: fraction = (units reaching the machine) / size.
    """
    if flow.value != network.demand:
        raise ValueError(f"flow value {flow.value} does not meet demand {network.demand}")
    per_job: list[dict[int, Fraction]] = []
    for j in range(scaled.base.job_count):
        size = scaled.size_int(j)
        fractions: dict[int, Fraction] = {}
        for machine, arc_idx in network.job_arcs[j]:
            units = flow.flows[arc_idx]
            if units:
                fractions[machine] = Fraction(units, size)
        per_job.append(fractions)
    assignment = FractionalAssignment(tuple(per_job))
    check_extraction_invariants(assignment, scaled)
    return assignment


def check_extraction_invariants(assignment: FractionalAssignment, scaled: ScaledInstance) -> None:
    """Verify the structural guarantees every extraction must satisfy."""
    k = scaled.k
    big_load = [Fraction(0)] * scaled.base.machine_count
    for j in range(scaled.base.job_count):
        fractions = assignment.per_job[j]
        total = sum(fractions.values(), Fraction(0))
        if total != 1:
            raise RuntimeError(f"job {j}: fractions sum to {total}, expected 1")
        if scaled.is_big(j):
            for machine, value in fractions.items():
                if value < Fraction(1, k):
                    raise RuntimeError(f"big job {j}: fraction {value} below 1/{k}")
                if (value * k).denominator != 1:
                    raise RuntimeError(f"big job {j}: fraction {value} not a multiple of 1/{k}")
                big_load[machine] += value
        else:
            if len(fractions) != 1 or next(iter(fractions.values())) != 1:
                raise RuntimeError(f"small job {j} is not integrally assigned")
    for machine, load in enumerate(big_load):
        if load > 1:
            raise RuntimeError(f"machine {machine}: big fractions sum to {load} > 1")
