# sepevo/coarsening/matching.py

import random
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from sepevo.coarsening.rating import EdgeRating
from sepevo.graph.core import Graph
from sepevo.types import Edge


def _blocked_mask(n: int, src: np.ndarray, dst: np.ndarray, blocked: Iterable[Edge]) -> np.ndarray:
    if not blocked:
        return np.zeros(len(src), dtype=bool)
    keys = np.fromiter((min(u, v) * n + max(u, v) for u, v in blocked), dtype=np.int64)
    return np.isin(src * n + dst, keys)

# ========== Dynamic programs on grown segments ==========

def best_path_matching(ratings: Sequence[float]) -> Tuple[float, List[int]]:
    """Maximum-rating set of pairwise non-adjacent edges on a path; returns edge positions."""
    size = len(ratings)
    best = [0.0] * (size + 1)
    if size:
        best[1] = ratings[0]
    for i in range(2, size + 1):
        best[i] = max(best[i - 1], best[i - 2] + ratings[i - 1])
    chosen = []
    i = size
    while i > 0:
        if best[i] == best[i - 1]:
            i -= 1
        else:
            chosen.append(i - 1)
            i -= 2
    return best[size], chosen[::-1]


def best_cycle_matching(ratings: Sequence[float]) -> Tuple[float, List[int]]:
    """Same as `best_path_matching` for a closed cycle (edge i touches edge i+1 mod L)."""
    size = len(ratings)
    without_first, rest = best_path_matching(ratings[1:])
    without_first_idx = [i + 1 for i in rest]
    if size < 3:
        return without_first, without_first_idx
    inner, inner_idx = best_path_matching(ratings[2:size - 1])
    with_first = ratings[0] + inner
    if with_first > without_first:
        return with_first, [0] + [i + 2 for i in inner_idx]
    return without_first, without_first_idx

# ========== Global Path Algorithm ==========

def gpa_matching(
    g: Graph,
    rating: EdgeRating,
    blocked: Set[Edge],
    rng: random.Random,
    max_node_weight: Optional[float] = None,
) -> List[Edge]:
    """
    Grow paths and even cycles from edges in decreasing rating order, then pick the
    optimal alternating subset of every segment. Blocked edges, and edges whose
    contraction would exceed `max_node_weight`, are never considered.
    """
    n = g.n
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(g.offsets))
    forward = src < g.targets
    src, dst, score = src[forward], g.targets[forward], rating.scores[forward]
    usable = (score > 0) & ~_blocked_mask(n, src, dst, blocked)
    if max_node_weight is not None:
        usable &= g.node_weight[src] + g.node_weight[dst] <= max_node_weight
    src, dst, score = src[usable], dst[usable], score[usable]

    perm = np.arange(len(src))
    shuffled = perm.tolist()
    rng.shuffle(shuffled)
    perm = np.asarray(shuffled, dtype=np.int64)
    order = perm[np.argsort(-score[perm], kind="stable")] if len(perm) else perm

    degree = [0] * n
    other_end = list(range(n))
    length = [0] * n
    links: List[List[Tuple[int, float]]] = [[] for _ in range(n)]

    src_l, dst_l, score_l = src.tolist(), dst.tolist(), score.tolist()
    for e in order.tolist():
        u, v, r = src_l[e], dst_l[e], score_l[e]
        if degree[u] >= 2 or degree[v] >= 2:
            continue
        if other_end[u] == v:
            # u and v end the same path: close it only if the cycle is even
            if length[u] % 2 == 1:
                links[u].append((v, r))
                links[v].append((u, r))
                degree[u] += 1
                degree[v] += 1
            continue
        a, b = other_end[u], other_end[v]
        total = length[u] + length[v] + 1
        links[u].append((v, r))
        links[v].append((u, r))
        degree[u] += 1
        degree[v] += 1
        other_end[a], other_end[b] = b, a
        length[a] = length[b] = total

    matching: List[Edge] = []
    visited = [False] * n

    def walk(start: int) -> Tuple[List[int], List[float], bool]:
        nodes, ratings = [start], []
        visited[start] = True
        prev, cur = -1, start
        while True:
            step = next(((w, r) for w, r in links[cur] if w != prev), None)
            if step is None:
                return nodes, ratings, False
            nxt, r = step
            ratings.append(r)
            if nxt == start:
                return nodes, ratings, True
            visited[nxt] = True
            nodes.append(nxt)
            prev, cur = cur, nxt

    for v in range(n):
        if degree[v] == 1 and not visited[v]:
            nodes, ratings, _ = walk(v)
            _, chosen = best_path_matching(ratings)
            matching.extend((nodes[i], nodes[i + 1]) for i in chosen)
    for v in range(n):
        if degree[v] == 2 and not visited[v]:
            nodes, ratings, _ = walk(v)
            _, chosen = best_cycle_matching(ratings)
            size = len(nodes)
            matching.extend((nodes[i], nodes[(i + 1) % size]) for i in chosen)

    return [(min(u, v), max(u, v)) for u, v in matching]
