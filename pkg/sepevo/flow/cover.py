# sepevo/flow/cover.py

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from sepevo.flow.network import FlowNetwork
from sepevo.graph.core import Graph, SeparatorSolution

logger = logging.getLogger(__name__)

# ========== Bipartite cover ==========

def min_weight_vertex_cover(weights: Sequence[int], edges: Iterable[Tuple[int, int]]) -> Set[int]:
    """
    Minimum-weight vertex cover of a bipartite edge set (left endpoint first) via a
    source -> left -> right -> sink network; the cover is read off the minimum cut.
    """
    edges = list(edges)
    if not edges:
        return set()
    left = sorted({u for u, _ in edges})
    right = sorted({v for _, v in edges})
    if set(left) & set(right):
        raise ValueError("cover edges must be bipartite: a node appears on both sides")

    index: Dict[int, int] = {}
    for v in left + right:
        index[v] = len(index)
    source, sink = len(index), len(index) + 1
    infinity = sum(weights[v] for v in index) + 1

    network = FlowNetwork(len(index) + 2)
    for u in left:
        network.add_arc(source, index[u], weights[u])
    for v in right:
        network.add_arc(index[v], sink, weights[v])
    for u, v in edges:
        network.add_arc(index[u], index[v], infinity)

    value = network.max_flow(source, sink)
    reach = network.reachable_from(source)
    cover = {u for u in left if not reach[index[u]]} | {v for v in right if reach[index[v]]}
    assert sum(weights[v] for v in cover) == value
    return cover

# ========== Edge partition -> node separator ==========

def separator_from_partition(
    g: Graph,
    labels: Sequence[int],
    k: int,
    epsilon: float,
    max_block_weight: Optional[float] = None,
) -> SeparatorSolution:
    """
    Turn an edge partition (labels 0..k-1) into a node separator by covering the cut
    edges of every adjacent block pair in turn; the separator is the union of the covers.
    """
    if len(labels) != g.n:
        raise ValueError("labels must have one entry per node")
    weights = g.weights
    src, dst, _ = g.edge_array
    by_pair: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for u, v in zip(src.tolist(), dst.tolist()):
        a, b = labels[u], labels[v]
        if a == b:
            continue
        if a > b:
            a, b, u, v = b, a, v, u
        by_pair.setdefault((a, b), []).append((u, v))

    separator: Set[int] = set()
    for pair in sorted(by_pair):
        open_edges = [(u, v) for u, v in by_pair[pair] if u not in separator and v not in separator]
        separator |= min_weight_vertex_cover(weights, open_edges)

    assignment = [k if v in separator else labels[v] for v in range(g.n)]
    logger.debug("decoupled %d block pairs into a separator of %d nodes", len(by_pair), len(separator))
    return SeparatorSolution.for_graph(g, assignment, k, epsilon, max_block_weight)


def separator_from_boundary(
    g: Graph,
    two_blocks: Sequence[int],
    epsilon: float,
    max_block_weight: Optional[float] = None,
) -> SeparatorSolution:
    """Node separator of a bisection: minimum vertex cover of the cut edges."""
    if any(label not in (0, 1) for label in two_blocks):
        raise ValueError("a bisection labels every node 0 or 1")
    return separator_from_partition(g, two_blocks, 2, epsilon, max_block_weight)
