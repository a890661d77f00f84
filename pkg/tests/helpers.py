# tests/helpers.py

import random
from collections import deque
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from sepevo.graph.core import Graph, SeparatorSolution, max_block_weight
from sepevo.graph.generators import random_graph

# ==================== Graph builders ====================

def edges_graph(n: int, edges: Iterable[Tuple[int, int]], node_weight: Optional[Sequence[int]] = None) -> Graph:
    edges = list(edges)
    return Graph.from_edges(n, [u for u, _ in edges], [v for _, v in edges], node_weight=node_weight)


def random_valid_solution(g: Graph, k: int, epsilon: float, rng: random.Random) -> SeparatorSolution:
    """Random labels, then one endpoint of every edge joining two blocks goes to the separator."""
    labels = [rng.randrange(k) for _ in range(g.n)]
    for u, v, _ in g.edges():
        if labels[u] != k and labels[v] != k and labels[u] != labels[v]:
            labels[rng.choice((u, v))] = k
    return SeparatorSolution.for_graph(g, labels, k, epsilon)


def small_random_graph(rng: random.Random, n_range=(6, 14), weighted: bool = False) -> Graph:
    n = rng.randint(*n_range)
    return random_graph(
        n, rng.uniform(0.15, 0.45), rng, components=rng.randint(1, 2),
        max_node_weight=3 if weighted else 1,
    )

# ==================== Oracles ====================

def _components(g: Graph, removed: Set[int]) -> List[int]:
    weights = g.weights
    seen = set(removed)
    sizes = []
    for root in range(g.n):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        total = 0
        while queue:
            u = queue.popleft()
            total += weights[u]
            for v in g.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        sizes.append(total)
    return sizes


def _packable(sizes: List[int], k: int, l_max: float) -> bool:
    """Components into k non-empty bins of capacity l_max."""
    if len(sizes) < k or sum(sizes) > k * l_max:
        return False
    sizes = sorted(sizes, reverse=True)
    loads = [0] * k

    def place(i: int) -> bool:
        empty = loads.count(0)
        if len(sizes) - i < empty:
            return False
        if i == len(sizes):
            return True
        tried = set()
        for b in range(k):
            if loads[b] in tried or loads[b] + sizes[i] > l_max:
                continue
            tried.add(loads[b])
            loads[b] += sizes[i]
            if place(i + 1):
                return True
            loads[b] -= sizes[i]
        return False

    return place(0)


def optimal_separator_weight(g: Graph, k: int, epsilon: float) -> Optional[int]:
    """Exhaustive minimum balanced k-way separator with non-empty blocks (n <= 16)."""
    l_max = max_block_weight(g.total_weight, k, epsilon)
    weights = g.weights
    best = None
    for mask in range(1 << g.n):
        removed = {v for v in range(g.n) if mask >> v & 1}
        weight = sum(weights[v] for v in removed)
        if best is not None and weight >= best:
            continue
        if _packable(_components(g, removed), k, l_max):
            best = weight
    return best


def min_disconnecting_weight(g: Graph, region: Sequence[int], sources: Set[int], sinks: Set[int]) -> int:
    """Lightest node set inside `region` that separates `sources` from `sinks` in the region's subgraph."""
    region = list(region)
    inside = set(region)
    weights = g.weights
    best = None
    for size in range(len(region) + 1):
        for cut in combinations(region, size):
            cut = set(cut)
            weight = sum(weights[v] for v in cut)
            if best is not None and weight >= best:
                continue
            start = [v for v in sources if v not in cut]
            seen = set(start)
            queue = deque(start)
            connected = False
            while queue and not connected:
                u = queue.popleft()
                if u in sinks:
                    connected = True
                for v in g.adjacency[u]:
                    if v in inside and v not in cut and v not in seen:
                        seen.add(v)
                        queue.append(v)
            if not connected:
                best = weight
    return best


def min_vertex_cover_weight(weights: Sequence[int], edges: Sequence[Tuple[int, int]]) -> int:
    nodes = sorted({v for e in edges for v in e})
    best = sum(weights[v] for v in nodes)
    for mask in range(1 << len(nodes)):
        chosen = {nodes[i] for i in range(len(nodes)) if mask >> i & 1}
        if all(u in chosen or v in chosen for u, v in edges):
            best = min(best, sum(weights[v] for v in chosen))
    return best


def brute_segment_matching(ratings: Sequence[float], cycle: bool) -> float:
    size = len(ratings)
    best = 0.0
    for mask in range(1 << size):
        picked = [i for i in range(size) if mask >> i & 1]
        if any(b == a + 1 for a, b in zip(picked, picked[1:])):
            continue
        if cycle and size > 1 and 0 in picked and size - 1 in picked:
            continue
        best = max(best, sum(ratings[i] for i in picked))
    return best
