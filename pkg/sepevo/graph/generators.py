# sepevo/graph/generators.py

import random
from typing import List, Optional

from sepevo.graph.core import Graph


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, range(n - 1), range(1, n))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    return Graph.from_edges(n, range(n), [(v + 1) % n for v in range(n)])


def grid_graph(rows: int, cols: int) -> Graph:
    """Node (r, c) has id r * cols + c."""
    src: List[int] = []
    dst: List[int] = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                src.append(v)
                dst.append(v + 1)
            if r + 1 < rows:
                src.append(v)
                dst.append(v + cols)
    return Graph.from_edges(rows * cols, src, dst)


def random_tree(n: int, rng: random.Random) -> Graph:
    parents = [rng.randrange(v) for v in range(1, n)]
    return Graph.from_edges(n, parents, range(1, n))


def random_graph(
    n: int,
    edge_prob: float,
    rng: random.Random,
    components: int = 1,
    max_node_weight: int = 1,
    max_edge_weight: int = 1,
) -> Graph:
    """
    G(n, p) split into `components` node ranges; a random spanning tree inside each range
    keeps every component connected.
    """
    if components < 1 or components > max(n, 1):
        raise ValueError("components must lie in 1..n")
    bounds = [round(i * n / components) for i in range(components + 1)]
    src: List[int] = []
    dst: List[int] = []
    for lo, hi in zip(bounds, bounds[1:]):
        for v in range(lo + 1, hi):
            src.append(rng.randrange(lo, v))
            dst.append(v)
        for u in range(lo, hi):
            for v in range(u + 1, hi):
                if rng.random() < edge_prob:
                    src.append(u)
                    dst.append(v)
    # merge tree and random edges before weighting so duplicates do not inflate weights
    skeleton = Graph.from_edges(n, src, dst)
    es, ed, _ = skeleton.edge_array
    weights = [rng.randint(1, max_edge_weight) for _ in range(len(es))]
    node_weight = [rng.randint(1, max_node_weight) for _ in range(n)]
    return Graph.from_edges(n, es, ed, weights, node_weight)


def disjoint_union(*graphs: Graph) -> Graph:
    src: List[int] = []
    dst: List[int] = []
    wgt: List[int] = []
    node_weight: List[int] = []
    offset = 0
    for g in graphs:
        for u, v, w in g.edges():
            src.append(u + offset)
            dst.append(v + offset)
            wgt.append(w)
        node_weight.extend(g.weights)
        offset += g.n
    return Graph.from_edges(offset, src, dst, wgt, node_weight)


def generate(kind: str, size: int, rng: Optional[random.Random] = None, **kwargs) -> Graph:
    rng = rng or random.Random(0)
    if kind == "path":
        return path_graph(size)
    if kind == "cycle":
        return cycle_graph(size)
    if kind == "grid":
        return grid_graph(size, kwargs.get("cols", size))
    if kind == "tree":
        return random_tree(size, rng)
    if kind == "random":
        return random_graph(size, kwargs.get("edge_prob", 4.0 / max(size, 1)), rng, kwargs.get("components", 1))
    raise ValueError(f"unknown graph kind {kind!r}")
