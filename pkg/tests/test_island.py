# tests/test_island.py

import random
from unittest.mock import patch

import pytest

from sepevo.constants import EventKind
from sepevo.errors import InvalidSolutionError
from sepevo.evolution.population import Individual, Population
from sepevo.graph.core import Graph, SeparatorSolution, is_valid
from sepevo.graph.generators import grid_graph, path_graph, random_graph, random_tree
from sepevo.island import driver
from sepevo.island.driver import run
from sepevo.island.protocol import Message, PeState, communicate, send_rounds
from sepevo.island.transport import Network, QueueMailbox
from sepevo.types import SolverConfig

SPARSE = Graph.from_edges(8, [], [])


def solution(separator) -> SeparatorSolution:
    labels = [2 if v in separator else v % 2 for v in range(SPARSE.n)]
    return SeparatorSolution.for_graph(SPARSE, labels, 2, 1.0)


def island(pe_id: int, p: int, network: Network, separator=range(5), capacity: int = 3) -> PeState:
    pop = Population(capacity)
    pop.add(Individual(solution(set(separator))))
    return PeState.create(pe_id, p, SPARSE, pop, 0, network.inbox(pe_id), lambda: 0.0)

# ==================== Protocol ====================

@pytest.mark.parametrize("p,rounds", [(1, 0), (2, 1), (4, 2), (5, 3), (8, 3)])
def test_send_rounds(p, rounds):
    assert send_rounds(p) == rounds


def test_mailbox_drains_in_order():
    box = QueueMailbox()
    for i in range(3):
        box.put(Message(sender=i, payload=solution({0}), timestamp=float(i)))
    assert [m.sender for m in box.drain()] == [0, 1, 2]
    assert box.drain() == []


def test_single_island_sends_nothing():
    network = Network(1)
    state = island(0, 1, network)
    assert communicate(state) == []


def test_fresh_best_is_sent_log_p_times_to_distinct_islands():
    network = Network(4)
    state = island(0, 4, network)
    targets = []
    for _ in range(6):
        targets += [target for target, _ in communicate(state)]
    assert len(targets) == 2
    assert len(set(targets)) == 2
    assert 0 not in targets


def test_all_peers_served_means_no_send():
    network = Network(3)
    state = island(0, 3, network)
    communicate(state)
    state.best_sent_to = {1, 2}
    state.rounds_remaining = 5
    assert communicate(state) == []


def test_received_improvement_restarts_the_rumor():
    network = Network(4)
    state = island(0, 4, network)
    state.best_fitness = 5
    state.best_sent_to = {1, 2}
    state.rounds_remaining = 0
    network.deliver(0, Message(sender=3, payload=solution({0, 1, 2}), timestamp=1.0, holders=frozenset({3})))

    sends = communicate(state)
    assert state.best_fitness == 3
    assert state.rounds_remaining == send_rounds(4) - 1
    assert len(sends) == 1
    target, message = sends[0]
    assert target in (1, 2)
    assert message.payload.separator_weight == 3
    assert {3, target, 0} <= message.holders
    assert [e.kind for e in state.events] == [EventKind.RECV]


def test_unusable_payload_is_rejected():
    network = Network(2)
    state = island(0, 2, network)
    bad = SeparatorSolution.for_graph(SPARSE, [0] * SPARSE.n, 2, 0.0)
    network.deliver(0, Message(sender=1, payload=bad, timestamp=0.0))
    with pytest.raises(InvalidSolutionError, match="unusable"):
        communicate(state)


def _steps_until_everyone_knows(p: int, rng: random.Random) -> int:
    network = Network(p)
    states = [island(pe, p, network) for pe in range(p)]
    for state in states:
        state.rng = random.Random(rng.random())
        communicate(state)
    planted = Individual(solution({0}))
    states[0].population.add(planted)
    steps = 0
    while any(s.population.best().fitness != 1 for s in states):
        steps += 1
        if steps > 100:
            break
        for state in states:
            for target, message in communicate(state):
                network.deliver(target, message)
    return steps


def test_planted_best_reaches_every_island():
    p = 8
    rng = random.Random(31)
    budget = p * send_rounds(p)
    reached = sum(_steps_until_everyone_knows(p, rng) <= budget for _ in range(100))
    assert reached >= 99

# ==================== Drivers ====================

def test_virtual_clock_run_is_reproducible():
    g = grid_graph(4, 4)
    config = SolverConfig(imbalance=0.03, virtual_tick=1.0)
    first = run(g, 2, 0.03, p=2, t_total=12.0, config=config, seed=5, virtual_clock=True)
    second = run(g, 2, 0.03, p=2, t_total=12.0, config=config, seed=5, virtual_clock=True)
    assert first.best.separator_weight == second.best.separator_weight
    assert first.best.assignment == second.best.assignment
    assert first.events == second.events
    report = is_valid(g, first.best)
    assert report.valid and report.balanced


def test_single_island_never_receives():
    g = path_graph(20)
    result = run(g, 2, 0.03, p=1, t_total=8.0, seed=1, virtual_clock=True)
    assert all(e.kind is not EventKind.RECV for e in result.events)
    assert result.events[0].kind is EventKind.CREATE
    assert result.best.separator_weight == 1


def test_repeated_runs_report_every_creation():
    g = path_graph(20)
    result = run(g, 2, 0.03, p=2, t_total=4.0, seed=2, virtual_clock=True, evolve=False)
    assert {e.kind for e in result.events} <= {EventKind.CREATE, EventKind.RECV}
    assert len([e for e in result.events if e.kind is EventKind.CREATE]) == 8


def test_tiny_budget_warns_and_returns_first_individual():
    g = path_graph(10)
    with patch.object(driver.logger, "warning") as warn:
        result = run(g, 2, 0.03, p=1, t_total=0.5, seed=0, virtual_clock=True)
    warn.assert_called_once()
    assert "too small" in warn.call_args[0][0]
    assert [e.kind for e in result.events] == [EventKind.CREATE]
    assert is_valid(g, result.best).balanced


def test_threaded_run_returns_valid_best():
    g = grid_graph(5, 5)
    result = run(g, 2, 0.03, p=2, t_total=1.0, seed=3)
    report = is_valid(g, result.best)
    assert report.valid and report.balanced
    assert result.best_pe in (0, 1)


def test_run_rejects_bad_arguments():
    with pytest.raises(ValueError, match="p must be"):
        run(path_graph(4), 2, 0.03, p=0)
    with pytest.raises(ValueError, match="t_total"):
        run(path_graph(4), 2, 0.03, t_total=0)


@pytest.mark.slow
def test_evolution_keeps_up_with_repeated_runs():
    rng = random.Random(29)
    instances = [
        (grid_graph(12, 12), 4),
        (random_graph(150, 0.04, rng, components=2), 4),
        (random_tree(120, rng), 8),
    ]
    config = SolverConfig(imbalance=0.03, fraction=4.0, coarsest_override=40)
    evolved, repeated = [], []
    for seed, (g, k) in enumerate(instances):
        for evolve, bucket in ((True, evolved), (False, repeated)):
            result = run(g, k, 0.03, p=2, t_total=40.0, config=config, seed=seed, virtual_clock=True, evolve=evolve)
            report = is_valid(g, result.best)
            assert report.valid and report.balanced
            bucket.append(result.best.separator_weight)
    # same simulated budget; allow one node of noise per instance
    assert sum(evolved) <= sum(repeated) + len(instances)
