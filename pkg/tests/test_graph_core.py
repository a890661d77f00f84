# tests/test_graph_core.py

import random

import pytest

from sepevo.coarsening.matching import gpa_matching
from sepevo.coarsening.rating import rate_edges
from sepevo.errors import InvalidSolutionError
from sepevo.graph.core import (
    Graph,
    SeparatorSolution,
    contract,
    cut_edges,
    is_valid,
    max_block_weight,
    project_solution,
    quotient,
    restrict_solution,
)
from sepevo.graph.generators import cycle_graph, disjoint_union, grid_graph, path_graph
from tests.helpers import edges_graph, random_valid_solution, small_random_graph

EPS = 0.03


# ==================== Graph ====================

def test_from_edges_merges_parallel_edges():
    g = Graph.from_edges(3, [0, 1, 0], [1, 0, 2], [2, 3, 1])
    assert g.n == 3
    assert g.m == 2
    assert dict(zip(g.adjacency[0], g.adjacency_weights[0])) == {1: 5, 2: 1}


def test_from_edges_rejects_self_loops_and_bad_weights():
    with pytest.raises(ValueError, match="self-loops"):
        Graph.from_edges(2, [0], [0])
    with pytest.raises(ValueError, match="node weights"):
        Graph.from_edges(2, [0], [1], node_weight=[0, 1])
    with pytest.raises(ValueError, match="out of range"):
        Graph.from_edges(2, [0], [2])


def test_subgraph_keeps_induced_edges():
    g = grid_graph(2, 3)
    sub, mapping = g.subgraph([0, 1, 4])
    assert mapping == [0, 1, 4]
    assert sub.m == 2
    assert sub.has_edge(0, 1) and sub.has_edge(1, 2)


def test_components_of_union():
    g = disjoint_union(path_graph(3), path_graph(2))
    assert g.components() == [0, 0, 0, 1, 1]

# ==================== Contraction ====================

def test_contract_triangle_sums_parallel_edges():
    g = cycle_graph(3)
    cmap = contract(g, [(0, 1)])
    assert cmap.coarse.n == 2
    assert cmap.coarse.weights == [2, 1]
    assert cmap.coarse.edge_weight.tolist() == [2, 2]


def test_contract_empty_matching_is_a_copy():
    g = grid_graph(3, 3)
    cmap = contract(g, [])
    assert cmap.coarse.n == g.n
    assert sorted(cmap.coarse.edges()) == sorted(g.edges())


def test_contract_path_middle_pair():
    cmap = contract(path_graph(4), [(1, 2)])
    assert cmap.coarse.n == 3
    assert cmap.coarse.weights == [1, 2, 1]
    assert cmap.coarse.m == 2


def test_contract_rejects_overlapping_pairs():
    with pytest.raises(ValueError, match="share a node"):
        contract(path_graph(4), [(0, 1), (1, 2)])


def test_project_keeps_separator_weight():
    g = cycle_graph(3)
    cmap = contract(g, [(0, 1)])
    coarse = SeparatorSolution.for_graph(cmap.coarse, [2, 0], 2, EPS)
    fine = project_solution(coarse, cmap)
    assert fine.assignment == [2, 2, 0]
    assert fine.separator_weight == coarse.separator_weight == 2


def test_project_identity_map():
    g = path_graph(3)
    cmap = contract(g, [])
    sol = SeparatorSolution.for_graph(g, [0, 2, 1], 2, EPS)
    assert project_solution(sol, cmap).assignment == sol.assignment


def test_projection_through_gpa_contractions_keeps_validity_and_weight():
    rng = random.Random(47)
    for _ in range(200):
        g = small_random_graph(rng, n_range=(6, 30), weighted=rng.random() < 0.5)
        matching = gpa_matching(g, rate_edges(g, "expansion2"), set(), rng)
        cmap = contract(g, matching)
        k = rng.choice((2, 3))
        coarse = random_valid_solution(cmap.coarse, k, 0.2, rng)
        fine = project_solution(coarse, cmap)
        assert is_valid(g, fine).valid
        assert fine.separator_weight == coarse.separator_weight
        assert fine.block_weight == coarse.block_weight


def test_restrict_needs_uniform_labels():
    g = path_graph(4)
    cmap = contract(g, [(1, 2)])
    uniform = SeparatorSolution.for_graph(g, [0, 2, 2, 1], 2, EPS)
    assert restrict_solution(uniform, cmap).assignment == [0, 2, 1]
    mixed = SeparatorSolution.for_graph(g, [0, 0, 2, 1], 2, EPS)
    with pytest.raises(InvalidSolutionError, match="differently labelled"):
        restrict_solution(mixed, cmap)

# ==================== Solutions ====================

def test_max_block_weight_formula():
    assert max_block_weight(3, 2, EPS) == pytest.approx(2.06)
    assert max_block_weight(16, 2, EPS) == pytest.approx(8.24)


def test_move_keeps_cached_weights():
    g = path_graph(5)
    sol = SeparatorSolution.for_graph(g, [0, 0, 2, 1, 1], 2, EPS)
    sol.move(1, 2)
    sol.move(2, 1)
    assert sol.block_weight == [1, 3]
    assert sol.separator_weight == 1
    assert is_valid(g, sol).valid


def test_copy_is_independent():
    g = path_graph(3)
    sol = SeparatorSolution.for_graph(g, [0, 2, 1], 2, EPS)
    clone = sol.copy()
    clone.move(0, 2)
    assert sol.separator_weight == 1
    assert clone.separator_weight == 2


def test_cut_edges_between_labels():
    g = path_graph(4)
    sol = SeparatorSolution.for_graph(g, [0, 0, 2, 1], 2, EPS)
    assert cut_edges(g, sol) == {(1, 2), (2, 3)}

# ==================== Quotient graph ====================

def test_quotient_of_star():
    g = edges_graph(4, [(0, 1), (0, 2), (0, 3)])
    sol = SeparatorSolution.for_graph(g, [2, 0, 0, 1], 2, EPS)
    assert quotient(g, sol).edges == {(0, 1)}


def test_quotient_without_separator_has_no_edges():
    g = disjoint_union(path_graph(3), path_graph(3))
    sol = SeparatorSolution.for_graph(g, [0, 0, 0, 1, 1, 1], 2, EPS)
    assert quotient(g, sol).edges == set()


def test_quotient_shortest_path():
    g = path_graph(7)
    sol = SeparatorSolution.for_graph(g, [0, 0, 3, 1, 3, 2, 2], 3, EPS)
    q = quotient(g, sol)
    assert q.shortest_path(0, 2) == [0, 1, 2]
    assert q.shortest_path(2, 2) == [2]

# ==================== Validation ====================

def test_valid_path_separator():
    g = path_graph(3)
    report = is_valid(g, SeparatorSolution.for_graph(g, [0, 2, 1], 2, EPS))
    assert report.valid is True
    assert report.balanced is True


def test_invalid_adjacent_blocks():
    g = path_graph(3)
    report = is_valid(g, SeparatorSolution.for_graph(g, [0, 1, 0], 2, EPS))
    assert report.valid is False
    assert len([v for v in report.violations if v.kind == "edge"]) == 2


def test_grid_column_separator_is_balanced():
    g = grid_graph(4, 4)
    labels = [0 if c == 0 else 2 if c == 1 else 1 for r in range(4) for c in range(4)]
    sol = SeparatorSolution.for_graph(g, labels, 2, EPS)
    report = is_valid(g, sol)
    assert sol.l_max == pytest.approx(8.24)
    assert report.valid and report.balanced


def test_empty_block_is_only_a_warning():
    g = path_graph(2)
    sol = SeparatorSolution.for_graph(g, [0, 2], 2, 1.0)
    report = is_valid(g, sol)
    assert report.valid is True
    assert report.warnings == ["block 1 is empty"]


def test_stale_cache_is_reported():
    g = path_graph(3)
    sol = SeparatorSolution.for_graph(g, [0, 2, 1], 2, EPS)
    sol.assignment[0] = 2
    report = is_valid(g, sol)
    assert report.valid is False
    assert any(v.kind == "cache" for v in report.violations)
