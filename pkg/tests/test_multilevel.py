# tests/test_multilevel.py

import random

import pytest

from sepevo.errors import InfeasibleInstanceError
from sepevo.graph.core import is_valid
from sepevo.graph.generators import cycle_graph, grid_graph, path_graph, random_graph, random_tree
from sepevo.kway.balance import balance
from sepevo.multilevel.bisection import greedy_bisection, recursive_partition
from sepevo.multilevel.initial import initial_separator
from sepevo.multilevel.solver import coarse_weight_bound, solve, vcycle
from sepevo.types import SolverConfig
from tests.helpers import optimal_separator_weight, random_valid_solution, small_random_graph

EPS = 0.03
ORACLE_CONFIG = SolverConfig(imbalance=EPS, initial_attempts=8)

# ==================== Edge partitions ====================

def test_greedy_bisection_respects_node_bounds():
    g = grid_graph(4, 4)
    labels = greedy_bisection(g, 8, random.Random(1), min_nodes=2, max_nodes=10)
    assert 2 <= labels.count(0) <= 10
    assert labels.count(0) == 8


def test_recursive_partition_uses_every_block():
    rng = random.Random(3)
    for k in (2, 3, 5, 8):
        labels = recursive_partition(grid_graph(6, 6), k, EPS, rng)
        assert sorted(set(labels)) == list(range(k))

# ==================== Initial separators ====================

def test_single_block_has_empty_separator():
    g = path_graph(5)
    sol = initial_separator(g, 1, EPS)
    assert sol.separator_weight == 0
    assert sol.block_weight == [5]


def test_too_many_blocks():
    with pytest.raises(InfeasibleInstanceError, match="too many blocks"):
        initial_separator(path_graph(3), 4, EPS)
    with pytest.raises(InfeasibleInstanceError, match="too many blocks"):
        solve(path_graph(3), 4, EPS)


def test_k_must_be_positive():
    with pytest.raises(ValueError, match="at least 1"):
        solve(path_graph(3), 0, EPS)


def test_path_of_three():
    g = path_graph(3)
    sol = solve(g, 2, EPS, rng=random.Random(0))
    assert sol.separator_weight == 1
    assert is_valid(g, sol).balanced

# ==================== Solver ====================

def test_grid_bisection_matches_oracle():
    g = grid_graph(4, 4)
    sol = solve(g, 2, EPS, ORACLE_CONFIG, random.Random(0))
    assert sol.separator_weight == 4
    assert is_valid(g, sol).balanced


def test_path_three_way_matches_oracle():
    g = path_graph(9)
    sol = solve(g, 3, EPS, ORACLE_CONFIG, random.Random(0))
    assert sol.separator_weight == 2
    assert is_valid(g, sol).balanced


def test_small_instances_against_exhaustive_oracle():
    rng = random.Random(42)
    instances = [
        (grid_graph(4, 4), 2),
        (grid_graph(3, 4), 2),
        (path_graph(10), 2),
        (path_graph(9), 3),
        (path_graph(12), 4),
        (cycle_graph(10), 2),
        (cycle_graph(12), 3),
        (random_tree(12, rng), 2),
        (random_tree(13, rng), 3),
        (random_tree(14, rng), 2),
    ]
    hits = 0
    for g, k in instances:
        optimum = optimal_separator_weight(g, k, EPS)
        sol = solve(g, k, EPS, ORACLE_CONFIG, random.Random(0))
        report = is_valid(g, sol)
        assert report.valid and report.balanced
        assert sol.separator_weight <= optimum + 2
        hits += sol.separator_weight <= optimum
    assert hits >= 0.9 * len(instances)


def test_generated_corpus_is_valid_and_balanced():
    rng = random.Random(7)
    corpus = [path_graph(60), cycle_graph(45), grid_graph(12, 15), grid_graph(20, 20)]
    corpus += [random_graph(rng.randint(50, 300), 0.04, rng, components=rng.randint(1, 3)) for _ in range(4)]
    for g in corpus:
        for k in (2, 4, 8):
            for eps in (0.03, 0.1):
                sol = solve(g, k, eps, SolverConfig(imbalance=eps), random.Random(k))
                report = is_valid(g, sol)
                assert report.valid, (g, k, eps)
                assert report.balanced, (g, k, eps)


def test_coarsening_is_used_on_larger_graphs():
    g = grid_graph(20, 20)
    config = SolverConfig(imbalance=EPS, coarsest_override=40)
    sol = solve(g, 4, EPS, config, random.Random(1))
    report = is_valid(g, sol)
    assert report.valid and report.balanced


def test_coarse_weight_bound():
    g = path_graph(10)
    assert coarse_weight_bound(g, 2, 0.0) == 2.5

# ==================== V-cycles ====================

def test_vcycle_keeps_optimal_solution():
    g = path_graph(9)
    sol = solve(g, 3, EPS, ORACLE_CONFIG, random.Random(0))
    again = vcycle(g, sol, ORACLE_CONFIG, random.Random(1))
    assert again.separator_weight == sol.separator_weight


def check_vcycle_never_worsens(trials: int, seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(trials):
        g = small_random_graph(rng, n_range=(10, 40))
        k = rng.randint(2, 4)
        sol = balance(g, random_valid_solution(g, k, 0.1, rng))
        out = vcycle(g, sol, SolverConfig(imbalance=0.1, coarsest_override=4), rng)
        assert out.separator_weight <= sol.separator_weight
        report = is_valid(g, out)
        assert report.valid and report.balanced


def test_vcycle_never_worsens():
    check_vcycle_never_worsens(30, seed=19)


@pytest.mark.slow
def test_vcycle_never_worsens_at_scale():
    check_vcycle_never_worsens(1000, seed=20)
