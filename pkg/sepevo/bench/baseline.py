# sepevo/bench/baseline.py

import logging
import random
from typing import List, Optional

from sepevo.coarsening.hierarchy import StopCriterion, build_hierarchy
from sepevo.errors import InfeasibleInstanceError
from sepevo.flow.cover import separator_from_partition
from sepevo.graph.core import Graph, SeparatorSolution, max_block_weight
from sepevo.kway.balance import balance
from sepevo.multilevel.bisection import recursive_partition, refine_edge_partition
from sepevo.multilevel.solver import coarse_weight_bound
from sepevo.types import SolverConfig

logger = logging.getLogger(__name__)


def multilevel_edge_partition(
    g: Graph,
    k: int,
    epsilon: float,
    rng: random.Random,
    config: SolverConfig,
) -> List[int]:
    """k-way edge partition: coarsen, recursive bisection, greedy cut refinement while uncoarsening."""
    stop = StopCriterion.node_threshold(max(config.coarsest_nodes(k), 2 * k))
    hierarchy = build_hierarchy(g, None, stop, rng, config.rating, coarse_weight_bound(g, k, epsilon))
    limit = [max_block_weight(g.total_weight, k, epsilon)] * k

    labels = recursive_partition(hierarchy.coarsest.graph, k, epsilon, rng)
    labels = refine_edge_partition(hierarchy.coarsest.graph, labels, limit)
    for level in reversed(hierarchy.levels[:-1]):
        coarse = labels
        labels = [coarse[c] for c in level.contraction.mapping]
        labels = refine_edge_partition(level.graph, labels, limit)
    return labels


def simple_baseline(
    g: Graph,
    k: int,
    epsilon: float,
    rng: Optional[random.Random] = None,
    config: Optional[SolverConfig] = None,
) -> SeparatorSolution:
    """
    Node separator by pairwise decoupling of an edge partition: every adjacent block pair
    contributes a minimum vertex cover of its remaining cut edges. Balanced afterwards.
    """
    rng = rng or random.Random(0)
    config = config or SolverConfig(imbalance=epsilon)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > g.n:
        raise InfeasibleInstanceError(f"too many blocks: k={k} for {g.n} nodes")

    labels = multilevel_edge_partition(g, k, epsilon, rng, config)
    sol = separator_from_partition(g, labels, k, epsilon)
    if not sol.is_balanced():
        sol = balance(g, sol)
    logger.info("simple baseline: separator weight %d", sol.separator_weight)
    return sol
