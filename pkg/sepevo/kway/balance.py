# sepevo/kway/balance.py

import heapq
import logging
from typing import List, Optional, Tuple

from sepevo.errors import InfeasibleInstanceError
from sepevo.graph.core import Graph, SeparatorSolution, quotient

logger = logging.getLogger(__name__)


def check_feasible(g: Graph, sol: SeparatorSolution) -> None:
    if sol.k > g.n:
        raise InfeasibleInstanceError(f"unbalanceable instance: k={sol.k} exceeds n={g.n}")
    if sol.l_max < g.max_node_weight:
        raise InfeasibleInstanceError(
            f"unbalanceable instance: L_max {sol.l_max:.2f} is below the heaviest node ({g.max_node_weight})"
        )

# ========== Moves between two adjoint blocks ==========

def _hop_candidates(g: Graph, sol: SeparatorSolution, src: int, dst: int) -> List[int]:
    k = sol.k
    labels = sol.assignment
    result = []
    for s in sol.separator_nodes():
        seen = {labels[u] for u in g.adjacency[s] if labels[u] != k}
        if src in seen and seen <= {src, dst}:
            result.append(s)
    return result


def _hop_gain(g: Graph, sol: SeparatorSolution, s: int, src: int, dst: int) -> Optional[Tuple[int, List[int]]]:
    """None if s no longer directly separates src and dst only."""
    labels = sol.assignment
    k = sol.k
    pulled = []
    for u in g.adjacency[s]:
        label = labels[u]
        if label == k or label == dst:
            continue
        if label != src:
            return None
        pulled.append(u)
    if not pulled:
        return None
    weights = g.weights
    return weights[s] - sum(weights[u] for u in pulled), pulled


def move_between(
    g: Graph,
    sol: SeparatorSolution,
    src: int,
    dst: int,
    amount: float,
    cap_dst: bool,
) -> int:
    """
    Shift weight out of `src` by moving separator nodes into `dst` and pulling their
    `src` neighbors into the separator, best gain first. Returns the weight `src` lost.
    """
    k = sol.k
    labels = sol.assignment
    weights = g.weights
    l_max = sol.l_max
    heap: List[Tuple[int, int, int]] = []
    for s in _hop_candidates(g, sol, src, dst):
        found = _hop_gain(g, sol, s, src, dst)
        if found is not None:
            heapq.heappush(heap, (-found[0], s, found[0]))

    lost = 0
    while heap and lost < amount:
        _, s, gain = heapq.heappop(heap)
        if labels[s] != k:
            continue
        found = _hop_gain(g, sol, s, src, dst)
        if found is None:
            continue
        if found[0] != gain:
            heapq.heappush(heap, (-found[0], s, found[0]))
            continue
        if cap_dst and sol.block_weight[dst] + weights[s] > l_max:
            continue
        pulled = found[1]
        sol.move(s, dst)
        for u in pulled:
            sol.move(u, k)
            lost += weights[u]
        for u in pulled:
            again = _hop_gain(g, sol, u, src, dst)
            if again is not None:
                heapq.heappush(heap, (-again[0], u, again[0]))
    return lost

# ========== Fallback moves ==========

def direct_move(g: Graph, sol: SeparatorSolution, heavy: int, light: int) -> bool:
    """Move one node of `heavy` into `light`, its remaining block neighbors join the separator."""
    k = sol.k
    labels = sol.assignment
    weights = g.weights
    room = sol.l_max - sol.block_weight[light]
    best = None
    for v in sol.block_nodes(heavy):
        if weights[v] > room:
            continue
        cost = sum(weights[u] for u in g.adjacency[v] if labels[u] != k and labels[u] != light)
        key = (cost, -weights[v], v)
        if best is None or key < best:
            best = key
    if best is None:
        return False
    v = best[2]
    for u in g.adjacency[v]:
        if labels[u] != k and labels[u] != light:
            sol.move(u, k)
    sol.move(v, light)
    return True


def _shed_to_separator(g: Graph, sol: SeparatorSolution, heavy: int) -> None:
    k = sol.k
    labels = sol.assignment
    nodes = sol.block_nodes(heavy)
    boundary = [v for v in nodes if any(labels[u] == k for u in g.adjacency[v])] or nodes
    v = min(boundary, key=lambda x: (g.weights[x], x))
    sol.move(v, k)

# ========== Balancing ==========

def balance(g: Graph, sol: SeparatorSolution) -> SeparatorSolution:
    """
    Restore the balance constraint. Weight flows from the heaviest block to the lightest
    along a shortest quotient-graph path; without a usable path a node is moved directly.
    Every iteration lowers the total excess, which bounds the loop.
    """
    check_feasible(g, sol)
    if sol.is_balanced():
        return sol

    work = sol.copy()
    l_max = work.l_max
    iterations = 0
    while not work.is_balanced():
        iterations += 1
        excess = work.excess()
        heavy, light = work.heaviest_block(), work.lightest_block()

        snapshot = work.copy()
        path = quotient(g, work).shortest_path(heavy, light)
        if path and len(path) > 1:
            amount = min(l_max - work.block_weight[light], work.block_weight[heavy] - l_max)
            for src, dst in zip(path, path[1:]):
                last = dst == light
                move_between(g, work, src, dst, amount, cap_dst=last)
                if work.block_weight[dst] <= l_max:
                    break
                amount = work.block_weight[dst] - l_max
        if work.excess() >= excess:
            work = snapshot
            if not direct_move(g, work, heavy, light):
                _shed_to_separator(g, work, heavy)

    logger.debug("balanced in %d iterations, separator weight %d -> %d", iterations, sol.separator_weight, work.separator_weight)
    return work
