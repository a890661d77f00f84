# sepevo/multilevel/solver.py

import logging
import random
from typing import Optional

from sepevo.coarsening.hierarchy import Hierarchy, StopCriterion, build_hierarchy
from sepevo.errors import InfeasibleInstanceError, InvalidSolutionError
from sepevo.graph.core import (
    Graph,
    SeparatorSolution,
    cut_edges,
    is_valid,
    max_block_weight,
    project_solution,
    restrict_solution,
)
from sepevo.kway.pairwise import refine_kway
from sepevo.multilevel.initial import initial_separator
from sepevo.types import SolverConfig

logger = logging.getLogger(__name__)

# ==================== Hierarchy helpers ====================

def coarse_weight_bound(g: Graph, k: int, epsilon: float) -> float:
    """Heaviest coarse node allowed during coarsening: half a block."""
    return max(float(g.max_node_weight), max_block_weight(g.total_weight, k, epsilon) / 2)


def restrict_to_coarsest(hierarchy: Hierarchy, sol: SeparatorSolution) -> SeparatorSolution:
    for cmap in hierarchy.contractions():
        sol = restrict_solution(sol, cmap)
    return sol


def refine_upward(
    hierarchy: Hierarchy,
    coarse_sol: SeparatorSolution,
    config: SolverConfig,
    rng: random.Random,
) -> SeparatorSolution:
    """Project level by level towards the input graph, refining on every level."""
    sol = coarse_sol
    for level in reversed(hierarchy.levels[:-1]):
        sol = project_solution(sol, level.contraction)
        sol = refine_kway(level.graph, sol, config, rng)
        logger.debug("level n=%d: separator weight %d", level.graph.n, sol.separator_weight)
    return sol


def _better(a: SeparatorSolution, b: SeparatorSolution) -> SeparatorSolution:
    """The balanced one, then the lighter separator; ties keep `a`."""
    key_a = (not a.is_balanced(), a.separator_weight)
    key_b = (not b.is_balanced(), b.separator_weight)
    return b if key_b < key_a else a

# ==================== Entry points ====================

def solve(
    g: Graph,
    k: int,
    epsilon: float,
    config: Optional[SolverConfig] = None,
    rng: Optional[random.Random] = None,
) -> SeparatorSolution:
    """Multilevel k-way node separator: coarsen, initial separator, uncoarsen with refinement."""
    config = config or SolverConfig(imbalance=epsilon)
    rng = rng or random.Random(0)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > g.n:
        raise InfeasibleInstanceError(f"too many blocks: k={k} for {g.n} nodes")

    stop = StopCriterion.node_threshold(max(config.coarsest_nodes(k), 2 * k))
    hierarchy = build_hierarchy(g, None, stop, rng, config.rating, coarse_weight_bound(g, k, epsilon))
    logger.info("hierarchy: %d levels, coarsest graph has %d nodes", hierarchy.depth, hierarchy.coarsest.graph.n)

    l_max = max_block_weight(g.total_weight, k, epsilon)
    sol = initial_separator(hierarchy.coarsest.graph, k, epsilon, rng, config, l_max)
    logger.info("initial separator weight %d", sol.separator_weight)
    sol = refine_upward(hierarchy, sol, config, rng)

    report = is_valid(g, sol)
    if not report.valid:
        raise InvalidSolutionError(f"solver produced an invalid separator: {report.violations[0].detail}")
    logger.info("final separator weight %d (balanced=%s)", sol.separator_weight, report.balanced)
    return sol


def vcycle(
    g: Graph,
    sol: SeparatorSolution,
    config: Optional[SolverConfig] = None,
    rng: Optional[random.Random] = None,
) -> SeparatorSolution:
    """
    Iterated multilevel pass: coarsen without contracting any cut edge, carry `sol` to
    the coarsest level and refine back up. Never returns a worse solution.
    """
    config = config or SolverConfig(imbalance=sol.epsilon)
    rng = rng or random.Random(0)
    stop = StopCriterion.node_threshold(max(config.coarsest_nodes(sol.k), 2 * sol.k))
    bound = coarse_weight_bound(g, sol.k, sol.epsilon)
    hierarchy = build_hierarchy(g, cut_edges(g, sol), stop, rng, config.rating, bound)

    coarse = restrict_to_coarsest(hierarchy, sol)
    coarse = refine_kway(hierarchy.coarsest.graph, coarse, config, rng)
    out = refine_upward(hierarchy, coarse, config, rng)
    if not is_valid(g, out).valid:
        logger.warning("v-cycle produced an invalid separator, keeping the input")
        return sol
    return _better(sol, out)
