# sepevo/multilevel/initial.py

import logging
import random
from typing import Optional

from sepevo.errors import InfeasibleInstanceError
from sepevo.flow.cover import separator_from_boundary, separator_from_partition
from sepevo.flow.fm import fm_local_search
from sepevo.flow.improve import flow_improve_2way
from sepevo.graph.core import Graph, SeparatorSolution, max_block_weight
from sepevo.kway.balance import balance, check_feasible
from sepevo.kway.pairwise import refine_kway
from sepevo.multilevel.bisection import greedy_bisection, recursive_partition, refine_edge_partition
from sepevo.types import SolverConfig

logger = logging.getLogger(__name__)


def _bisection_separator(g: Graph, epsilon: float, l_max: float, rng: random.Random, config: SolverConfig) -> SeparatorSolution:
    half = g.total_weight / 2
    labels = greedy_bisection(g, half, rng)
    labels = refine_edge_partition(g, labels, (l_max, l_max))
    sol = separator_from_boundary(g, labels, epsilon, l_max)
    if not sol.is_balanced():
        sol = balance(g, sol)
    sol = flow_improve_2way(g, sol, config.flow_alpha, config.flow_retries, rng)
    return fm_local_search(g, sol, sol.separator_nodes(), rng=rng, patience_factor=config.fm_patience)


def _kway_separator(g: Graph, k: int, epsilon: float, l_max: float, rng: random.Random, config: SolverConfig) -> SeparatorSolution:
    labels = recursive_partition(g, k, epsilon, rng)
    sol = separator_from_partition(g, labels, k, epsilon, l_max)
    return refine_kway(g, sol, config, rng)


def initial_separator(
    g: Graph,
    k: int,
    epsilon: float,
    rng: Optional[random.Random] = None,
    config: Optional[SolverConfig] = None,
    l_max: Optional[float] = None,
) -> SeparatorSolution:
    """
    Best of several independent attempts: a refined bisection separator for k = 2,
    recursive bisection plus k-way refinement otherwise.
    """
    rng = rng or random.Random(0)
    config = config or SolverConfig(imbalance=epsilon)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > g.n:
        raise InfeasibleInstanceError(f"too many blocks: k={k} for {g.n} nodes")
    l_max = max_block_weight(g.total_weight, k, epsilon) if l_max is None else l_max
    if k == 1:
        return SeparatorSolution.for_graph(g, [0] * g.n, 1, epsilon, l_max)
    check_feasible(g, SeparatorSolution.for_graph(g, [k] * g.n, k, epsilon, l_max))

    best = None
    for attempt in range(config.initial_attempts):
        if k == 2:
            sol = refine_kway(g, _bisection_separator(g, epsilon, l_max, rng, config), config, rng)
        else:
            sol = _kway_separator(g, k, epsilon, l_max, rng, config)
        if not sol.is_balanced():
            sol = balance(g, sol)
        logger.debug("initial attempt %d: separator weight %d", attempt, sol.separator_weight)
        if best is None or sol.separator_weight < best.separator_weight:
            best = sol
    return best
