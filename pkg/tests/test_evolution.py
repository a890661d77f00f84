# tests/test_evolution.py

import random
from unittest.mock import MagicMock

import pytest

from sepevo.errors import InvalidSolutionError
from sepevo.evolution.operators import combine, create_individual, mutate
from sepevo.evolution.population import (
    Individual,
    Population,
    estimate_population_size,
    insert_with_eviction,
    similarity,
    tournament_select,
)
from sepevo.graph.core import Graph, SeparatorSolution, is_valid
from sepevo.graph.generators import disjoint_union, grid_graph, path_graph, random_graph
from sepevo.types import SolverConfig

EPS = 0.03
SPARSE = Graph.from_edges(12, [], [])


def individual(separator, birth_round=0) -> Individual:
    labels = [2 if v in separator else v % 2 for v in range(SPARSE.n)]
    return Individual(SeparatorSolution.for_graph(SPARSE, labels, 2, 1.0), birth_round)

# ==================== Population sizing ====================

def test_population_size_formula():
    assert estimate_population_size(2, 120, 10) == 6


def test_population_size_floor():
    assert estimate_population_size(1e6, 120, 10) == 3
    assert estimate_population_size(60, 60, 1) == 3


def test_population_size_rejects_bad_input():
    with pytest.raises(ValueError, match="t_one"):
        estimate_population_size(0, 10, 10)
    with pytest.raises(ValueError, match="f must be"):
        estimate_population_size(1, 10, 0.5)

# ==================== Selection ====================

def test_tournament_prefers_smaller_separator():
    pop = Population(2)
    good, bad = individual({0, 1, 2, 3, 4}), individual({0, 1, 2, 3, 4, 5, 6, 7, 8})
    pop.add(good)
    pop.add(bad)
    rng = MagicMock()
    rng.choice.side_effect = [bad, good]
    assert tournament_select(pop, rng) is good


def test_tournament_favors_best_over_worst():
    pop = Population(4)
    members = [individual(set(range(size))) for size in (2, 4, 6, 8)]
    for member in members:
        pop.add(member)
    rng = random.Random(41)
    picks = [tournament_select(pop, rng) for _ in range(10_000)]
    best_share = sum(p is members[0] for p in picks) / len(picks)
    worst_share = sum(p is members[-1] for p in picks) / len(picks)
    # two draws with replacement: 7/16 versus 1/16
    assert best_share > worst_share
    assert best_share == pytest.approx(7 / 16, abs=0.03)
    assert worst_share == pytest.approx(1 / 16, abs=0.02)


def test_tournament_on_singleton():
    pop = Population(3)
    only = individual({1, 2})
    pop.add(only)
    assert tournament_select(pop, random.Random(0)) is only


def test_population_rejects_imbalanced_members():
    g = path_graph(4)
    sol = SeparatorSolution.for_graph(g, [0, 0, 0, 0], 2, EPS)
    with pytest.raises(InvalidSolutionError, match="balanced"):
        Population(2).add(Individual(sol))

# ==================== Replacement ====================

def test_similarity_examples():
    assert similarity({1, 2, 3}, {2, 3, 4}) == 2
    assert similarity({1, 2}, {1, 2}) == 0
    assert similarity({1, 2, 3}, set()) == 3


def test_similarity_is_symmetric_difference_size():
    rng = random.Random(43)
    for _ in range(500):
        first = set(rng.sample(range(30), rng.randint(0, 15)))
        second = set(rng.sample(range(30), rng.randint(0, 15)))
        assert similarity(first, second) == similarity(second, first) == len(first ^ second)
        assert similarity(first, first) == 0


def test_insert_below_capacity():
    pop = Population(2)
    outcome = insert_with_eviction(pop, individual({0}))
    assert outcome.inserted and outcome.evicted is None
    assert len(pop) == 1


class TestEvictionPolicy:
    """Replacement in a full population."""

    def setup_method(self):
        self.pop = Population(3)
        self.far = individual({0, 1, 2, 3, 4, 5})
        self.near = individual({0, 1, 2, 3})
        self.other = individual({0, 2, 3, 4, 5, 6, 7})
        for member in (self.far, self.near, self.other):
            self.pop.add(member)

    def test_most_similar_member_is_evicted(self):
        offspring = individual({0, 1})
        assert similarity(self.far.separator, offspring.separator) == 4
        assert similarity(self.near.separator, offspring.separator) == 2
        assert similarity(self.other.separator, offspring.separator) == 7
        outcome = insert_with_eviction(self.pop, offspring)
        assert outcome.evicted is self.near
        assert offspring in self.pop.members
        assert len(self.pop) == 3

    def test_worse_offspring_is_discarded(self):
        offspring = individual({0, 1, 2, 3, 4, 5, 6, 7, 8})
        outcome = insert_with_eviction(self.pop, offspring)
        assert outcome.inserted is False
        assert offspring not in self.pop.members

    def test_duplicate_replaces_its_twin(self):
        twin = Individual(self.near.solution.copy())
        outcome = insert_with_eviction(self.pop, twin)
        assert outcome.evicted is self.near
        assert len(self.pop) == 3

# ==================== Operators ====================

def test_self_combine_is_not_worse():
    g = grid_graph(6, 6)
    config = SolverConfig(imbalance=EPS)
    parent = create_individual(g, 2, EPS, config, random.Random(0))
    child = combine(g, parent, parent, config, random.Random(1))
    assert child.fitness <= parent.fitness
    assert is_valid(g, child.solution).balanced


def check_combine_dominance(pairs: int, seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(pairs):
        g = random_graph(rng.randint(30, 80), 0.08, rng, components=rng.randint(1, 2))
        k = rng.choice((2, 3, 4))
        config = SolverConfig(imbalance=EPS, coarsest_override=10)
        first = create_individual(g, k, EPS, config, random.Random(rng.random()))
        second = create_individual(g, k, EPS, config, random.Random(rng.random()))
        child = combine(g, first, second, config, rng, birth_round=3)
        assert child.fitness <= min(first.fitness, second.fitness)
        assert child.birth_round == 3
        report = is_valid(g, child.solution)
        assert report.valid and report.balanced


def test_combine_dominates_both_parents():
    check_combine_dominance(15, seed=23)


@pytest.mark.slow
def test_combine_dominates_both_parents_at_scale():
    check_combine_dominance(1000, seed=24)


def test_combine_on_two_components():
    g = disjoint_union(path_graph(10), path_graph(10))
    config = SolverConfig(imbalance=EPS)
    first = create_individual(g, 2, EPS, config, random.Random(0))
    second = create_individual(g, 2, EPS, config, random.Random(1))
    child = combine(g, first, second, config, random.Random(2))
    assert child.fitness <= min(first.fitness, second.fitness)


def test_mutation_keeps_validity():
    rng = random.Random(29)
    for _ in range(10):
        g = random_graph(rng.randint(30, 60), 0.1, rng)
        config = SolverConfig(imbalance=EPS, coarsest_override=10)
        parent = create_individual(g, 2, EPS, config, rng)
        child = mutate(g, parent, config, rng)
        report = is_valid(g, child.solution)
        assert report.valid and report.balanced
