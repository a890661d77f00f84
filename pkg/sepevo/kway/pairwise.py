# sepevo/kway/pairwise.py

import logging
import random
from typing import List, Optional, Tuple

from sepevo.flow.fm import fm_local_search
from sepevo.flow.improve import flow_improve_2way
from sepevo.graph.core import Graph, SeparatorSolution, adjacent_blocks
from sepevo.kway.balance import balance
from sepevo.kway.preprocess import adjoint_pairs, preprocess
from sepevo.types import SolverConfig

logger = logging.getLogger(__name__)

# ==================== Two-block subproblems ====================

def pair_subproblem(g: Graph, sol: SeparatorSolution, a: int, b: int) -> Tuple[Graph, List[int], SeparatorSolution]:
    """
    Subgraph induced by blocks a and b plus the separator nodes adjacent to exactly
    these two blocks, with a 2-way solution (a -> 0, b -> 1) under the global L_max.
    """
    k = sol.k
    labels = sol.assignment
    nodes = []
    for v, label in enumerate(labels):
        if label == a or label == b:
            nodes.append(v)
        elif label == k and adjacent_blocks(g, sol, v) == {a, b}:
            nodes.append(v)
    sub, mapping = g.subgraph(nodes)
    local = [0 if labels[v] == a else 1 if labels[v] == b else 2 for v in mapping]
    sub_sol = SeparatorSolution.for_graph(sub, local, 2, sol.epsilon, max_block_weight=sol.l_max)
    return sub, mapping, sub_sol


def refine_pair(
    g: Graph,
    sol: SeparatorSolution,
    a: int,
    b: int,
    config: SolverConfig,
    rng: random.Random,
) -> bool:
    """Improve the separator between blocks a and b in place; True if it got lighter."""
    sub, mapping, sub_sol = pair_subproblem(g, sol, a, b)
    if not sub_sol.separator_weight:
        return False
    improved = flow_improve_2way(sub, sub_sol, config.flow_alpha, config.flow_retries, rng)
    improved = fm_local_search(
        sub, improved, improved.separator_nodes(), rng=rng, patience_factor=config.fm_patience,
    )
    if improved.separator_weight >= sub_sol.separator_weight or not improved.is_balanced():
        return False

    k = sol.k
    translate = (a, b, k)
    for i, v in enumerate(mapping):
        sol.move(v, translate[improved.assignment[i]])
    logger.debug("pair (%d, %d): separator %d -> %d", a, b, sub_sol.separator_weight, improved.separator_weight)
    return True


def pairwise_local_search(
    g: Graph,
    sol: SeparatorSolution,
    rounds_cap: Optional[int] = None,
    config: Optional[SolverConfig] = None,
    rng: Optional[random.Random] = None,
) -> SeparatorSolution:
    """
    Rounds of two-block refinement over all adjoint block pairs. A pair whose refinement
    fails is dropped; the search ends when no pair is left or the round cap is hit.
    """
    config = config or SolverConfig()
    rng = rng or random.Random(0)
    rounds_cap = config.pairwise_rounds if rounds_cap is None else rounds_cap

    work = sol.copy()
    pairs = sorted(adjoint_pairs(g, work))
    for _ in range(rounds_cap):
        if not pairs:
            break
        pairs = [(a, b) for a, b in pairs if refine_pair(g, work, a, b, config, rng)]

    if work.separator_weight > sol.separator_weight or (sol.is_balanced() and not work.is_balanced()):
        logger.warning("pairwise search lost quality, keeping the input")
        return sol
    return work


def refine_kway(
    g: Graph,
    sol: SeparatorSolution,
    config: Optional[SolverConfig] = None,
    rng: Optional[random.Random] = None,
) -> SeparatorSolution:
    """Preprocess, balance, then pairwise local search; never worse than a balanced input."""
    config = config or SolverConfig()
    rng = rng or random.Random(0)
    out = pairwise_local_search(g, balance(g, preprocess(g, sol)), config=config, rng=rng)
    if sol.is_balanced() and out.separator_weight > sol.separator_weight:
        return sol
    return out
