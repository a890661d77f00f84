# sepevo/multilevel/bisection.py

import random
from collections import deque
from typing import Dict, List, Optional, Sequence

from sepevo.graph.core import Graph

# ==================== Edge bisection ====================

def greedy_bisection(g: Graph, target_weight: float, rng: random.Random, min_nodes: int = 1, max_nodes: int = 0) -> List[int]:
    """
    BFS region growing from a random node; nodes join side 0 until `target_weight` is
    reached. A disconnected remainder restarts the search from another random node.
    Side 0 ends up with between `min_nodes` and `max_nodes` nodes.
    """
    n = g.n
    max_nodes = max_nodes or n - 1
    labels = [1] * n
    weights = g.weights
    order = list(range(n))
    rng.shuffle(order)
    grown = count = 0
    queue: deque = deque()
    starts = iter(order)

    while count < max_nodes and (grown < target_weight or count < min_nodes):
        if not queue:
            v = next((s for s in starts if labels[s] == 1), None)
            if v is None:
                break
        else:
            v = queue.popleft()
            if labels[v] == 0:
                continue
        labels[v] = 0
        grown += weights[v]
        count += 1
        queue.extend(u for u in g.adjacency[v] if labels[u] == 1)
    return labels


def refine_edge_partition(
    g: Graph,
    labels: List[int],
    max_weight: Sequence[float],
    min_count: Optional[Sequence[int]] = None,
    passes: int = 2,
) -> List[int]:
    """
    Greedy boundary moves that lower the edge cut: a node goes to the neighboring part it
    is most strongly connected to if that part stays under its `max_weight`.
    """
    parts = len(max_weight)
    min_count = min_count or [1] * parts
    weights = g.weights
    side = [0.0] * parts
    count = [0] * parts
    for v, label in enumerate(labels):
        side[label] += weights[v]
        count[label] += 1
    for _ in range(passes):
        moved = False
        for v in range(g.n):
            here = labels[v]
            if count[here] <= min_count[here]:
                continue
            connection: Dict[int, int] = {}
            for u, w in zip(g.adjacency[v], g.adjacency_weights[v]):
                connection[labels[u]] = connection.get(labels[u], 0) + w
            internal = connection.pop(here, 0)
            choices = [(w, -b) for b, w in connection.items() if side[b] + weights[v] <= max_weight[b]]
            if not choices:
                continue
            external, there = max(choices)
            if external <= internal:
                continue
            there = -there
            labels[v] = there
            side[here] -= weights[v]
            side[there] += weights[v]
            count[here] -= 1
            count[there] += 1
            moved = True
        if not moved:
            break
    return labels


def recursive_partition(g: Graph, k: int, epsilon: float, rng: random.Random) -> List[int]:
    """Edge partition into k parts by recursive proportional bisection (block i of size ~ c(V)/k)."""
    labels = [0] * g.n

    def split(nodes: List[int], parts: int, first: int) -> None:
        if parts == 1:
            for v in nodes:
                labels[v] = first
            return
        sub, mapping = g.subgraph(nodes)
        left = parts // 2
        fraction = left / parts
        target = fraction * sub.total_weight
        side = greedy_bisection(sub, target, rng, min_nodes=left, max_nodes=len(nodes) - (parts - left))
        bounds = ((1 + epsilon) * target, (1 + epsilon) * (sub.total_weight - target))
        side = refine_edge_partition(sub, side, bounds, min_count=(left, parts - left))
        split([mapping[i] for i in range(sub.n) if side[i] == 0], left, first)
        split([mapping[i] for i in range(sub.n) if side[i] == 1], parts - left, first + left)

    split(list(range(g.n)), k, 0)
    return labels
