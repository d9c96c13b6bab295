import random
from fractions import Fraction

import pytest

from twoval_makespan.flow import (
    FlowSolution,
    build_network,
    extract_assignment,
    max_flow_integral,
    min_feasible_T,
)
from twoval_makespan.generator import random_instance
from twoval_makespan.model import Instance, ScaledInstance, normalize, scale_to_integer
from twoval_makespan.oracle import enumerate_opt


def _scaled(machines, jobs):
    return scale_to_integer(normalize(Instance.build(machines, jobs))[0])


def _scaled_direct(machines, jobs, k):
    # keeps all-big fixtures at their intended k instead of renormalizing to 1
    return ScaledInstance(Instance.build(machines, jobs), k, Fraction(1, k))


def test_network_node_count_four_jobs_two_machines():
    # 4 jobs, 2 machines: 1 source + 4 job nodes + 2 throttles + 2 machines + 1 sink
    scaled = _scaled(2, [(2, [0]), (1, [0, 1]), (1, [1]), (2, [0, 1])])
    network = build_network(scaled, 3)
    assert network.node_count == 10
    assert network.node_count == 1 + 4 + 2 * 2 + 1
    # at the brute-forced optimum the full demand is routable
    opt = enumerate_opt(scaled.base).opt_makespan
    at_opt = build_network(scaled, int(opt))
    assert max_flow_integral(at_opt).value == at_opt.demand == 6


def test_smallest_network_is_a_unit_path():
    scaled = _scaled(1, [(1, [0])])
    network = build_network(scaled, 1)
    # source->job, job->machine (small, direct), throttle->machine, machine->sink
    caps = [(a.tail, a.head, a.capacity) for a in network.arcs]
    assert (0, 1, 1) in caps  # source -> job
    assert all(a.capacity == 1 for a in network.arcs)
    assert max_flow_integral(network).value == 1 == network.demand


def test_big_job_routes_through_throttles():
    scaled = _scaled_direct(2, [(2, [0, 1])], k=2)  # one big job, k = 2
    network = build_network(scaled, 2)
    job_node = 1
    throttle0, throttle1 = 2, 3
    machine0, machine1 = 4, 5
    caps = {(a.tail, a.head): a.capacity for a in network.arcs}
    assert caps[(job_node, throttle0)] == 2
    assert caps[(job_node, throttle1)] == 2
    assert caps[(throttle0, machine0)] == 2
    assert caps[(throttle1, machine1)] == 2
    assert caps[(machine0, network.sink)] == 2
    # no arc from the big job straight to a machine node
    assert (job_node, machine0) not in caps and (job_node, machine1) not in caps


def test_throttle_caps_big_inflow():
    # two big jobs restricted to one machine: at most k units can reach it
    scaled = _scaled_direct(1, [(2, [0]), (2, [0])], k=2)
    network = build_network(scaled, 100)
    solution = max_flow_integral(network)
    assert solution.value <= 2 < network.demand
    assert min_feasible_T(scaled) is None


def test_min_feasible_single_job():
    scaled = _scaled_direct(1, [(3, [0])], k=3)
    assert min_feasible_T(scaled) == 3


def test_min_feasible_matches_brute_force():
    # big job on {0,1} plus two small jobs stuck on 0; both big placements enumerated
    inst = Instance.build(2, [(2, [0, 1]), (1, [0]), (1, [0])])
    scaled = scale_to_integer(normalize(inst)[0])
    opt = enumerate_opt(scaled.base).opt_makespan
    assert opt == 2
    assert min_feasible_T(scaled) == 2


def test_feasibility_monotone_in_estimate():
    rng = random.Random("flow-monotone")
    for _ in range(25):
        inst = random_instance(rng, rng.randint(1, 8), rng.randint(1, 3), rng.randint(2, 4))
        scaled = scale_to_integer(normalize(inst)[0])
        feasible = []
        for estimate in range(scaled.max_size(), scaled.total_size() + 1):
            network = build_network(scaled, estimate)
            feasible.append(max_flow_integral(network).value == network.demand)
        # once feasible, always feasible
        assert all(b or not a for a, b in zip(feasible, feasible[1:]))


def test_extract_small_job_integral():
    scaled = _scaled(2, [(1, [0, 1])])
    estimate = min_feasible_T(scaled)
    network = build_network(scaled, estimate)
    assignment = extract_assignment(network, max_flow_integral(network), scaled)
    assert assignment.is_integral(0)
    assert sum(assignment.per_job[0].values()) == 1


def test_extract_half_split_big_job():
    # hand-built flow: big job k=2 sends 1 unit to each throttle
    scaled = _scaled_direct(2, [(2, [0, 1])], k=2)
    network = build_network(scaled, 1)
    flows = [0] * len(network.arcs)
    flows[0] = 2  # source -> job
    arcs = {(a.tail, a.head): idx for idx, a in enumerate(network.arcs)}
    flows[arcs[(1, 2)]] = 1  # job -> throttle 0
    flows[arcs[(1, 3)]] = 1  # job -> throttle 1
    flows[arcs[(2, 4)]] = 1
    flows[arcs[(3, 5)]] = 1
    flows[arcs[(4, network.sink)]] = 1
    flows[arcs[(5, network.sink)]] = 1
    assignment = extract_assignment(network, FlowSolution(tuple(flows), 2), scaled)
    assert assignment.per_job[0] == {0: Fraction(1, 2), 1: Fraction(1, 2)}


def test_extract_two_thirds_split():
    # big job k=3 sending 2 units to throttle 0 and 1 to throttle 1
    scaled = _scaled_direct(2, [(3, [0, 1])], k=3)
    network = build_network(scaled, 2)
    arcs = {(a.tail, a.head): idx for idx, a in enumerate(network.arcs)}
    flows = [0] * len(network.arcs)
    flows[arcs[(0, 1)]] = 3
    flows[arcs[(1, 2)]] = 2
    flows[arcs[(1, 3)]] = 1
    flows[arcs[(2, 4)]] = 2
    flows[arcs[(3, 5)]] = 1
    flows[arcs[(4, network.sink)]] = 2
    flows[arcs[(5, network.sink)]] = 1
    assignment = extract_assignment(network, FlowSolution(tuple(flows), 3), scaled)
    assert assignment.per_job[0] == {0: Fraction(2, 3), 1: Fraction(1, 3)}


def test_extract_rejects_short_flow():
    scaled = _scaled(1, [(1, [0])])
    network = build_network(scaled, 1)
    with pytest.raises(ValueError, match="demand"):
        extract_assignment(network, FlowSolution((0,) * len(network.arcs), 0), scaled)


def test_extraction_invariants_on_random_instances():
    rng = random.Random("flow-extract")
    for _ in range(40):
        inst = random_instance(rng, rng.randint(1, 9), rng.randint(1, 4), rng.randint(2, 5))
        scaled = scale_to_integer(normalize(inst)[0])
        estimate = min_feasible_T(scaled)
        if estimate is None:
            continue
        network = build_network(scaled, estimate)
        # extract_assignment checks the invariants internally and raises on breach
        assignment = extract_assignment(network, max_flow_integral(network), scaled)
        for j in range(scaled.base.job_count):
            assert sum(assignment.per_job[j].values()) == 1


def test_flow_deterministic():
    scaled = _scaled(3, [(2, [0, 1]), (1, [1, 2]), (2, [0, 2]), (1, [0])])
    estimate = min_feasible_T(scaled)
    network = build_network(scaled, estimate)
    first = max_flow_integral(network)
    second = max_flow_integral(build_network(scaled, estimate))
    assert first == second


def test_empty_instance_estimate_zero():
    scaled = scale_to_integer(Instance.build(2, []))
    assert min_feasible_T(scaled) == 0
