# sepevo/flow/fm.py

import heapq
import logging
import random
from typing import Iterable, List, Optional, Set, Tuple

from sepevo.config import DEFAULT_FM_PATIENCE
from sepevo.graph.core import Graph, SeparatorSolution

logger = logging.getLogger(__name__)


def move_gain(g: Graph, sol: SeparatorSolution, v: int, block: int) -> Tuple[int, List[int]]:
    """Gain of moving separator node v into `block`, plus the neighbors that would join the separator."""
    labels = sol.assignment
    k = sol.k
    weights = g.weights
    pulled = [u for u in g.adjacency[v] if labels[u] != k and labels[u] != block]
    return weights[v] - sum(weights[u] for u in pulled), pulled


def _target_blocks(g: Graph, sol: SeparatorSolution, v: int) -> Set[int]:
    k = sol.k
    labels = sol.assignment
    blocks = {labels[u] for u in g.adjacency[v] if labels[u] != k}
    return blocks or {sol.lightest_block()}


def _score(sol: SeparatorSolution) -> Tuple[int, int]:
    return sol.separator_weight, max(sol.block_weight)


def fm_local_search(
    g: Graph,
    sol: SeparatorSolution,
    start_nodes: Iterable[int],
    max_unsuccessful_moves: Optional[int] = None,
    rng: Optional[random.Random] = None,
    patience_factor: int = DEFAULT_FM_PATIENCE,
) -> SeparatorSolution:
    """
    Localized FM on the separator. Moves a separator node into a block and pulls its
    neighbors from the other blocks into the separator; every node leaves the separator
    at most once. The best snapshot seen is returned.
    """
    rng = rng or random.Random(0)
    k = sol.k
    start = [v for v in start_nodes if sol.assignment[v] == k]
    if not start:
        return sol
    if max_unsuccessful_moves is None:
        max_unsuccessful_moves = patience_factor * len(start)

    work = sol.copy()
    labels = work.assignment
    weights = g.weights
    l_max = work.l_max
    nonempty = [w > 0 for w in work.block_weight]

    heap: List[Tuple[int, float, int, int, int]] = []
    version = {}
    left_separator: Set[int] = set()

    def push(v: int) -> None:
        version[v] = version.get(v, 0) + 1
        for block in _target_blocks(g, work, v):
            gain, _ = move_gain(g, work, v, block)
            heapq.heappush(heap, (-gain, rng.random(), v, block, version[v]))

    for v in start:
        push(v)

    log: List[Tuple[int, int]] = []
    best_score = _score(work)
    best_len = 0
    unsuccessful = 0

    while heap and unsuccessful < max_unsuccessful_moves:
        _, _, v, block, ver = heapq.heappop(heap)
        if ver != version.get(v) or labels[v] != k or v in left_separator:
            continue
        gain, pulled = move_gain(g, work, v, block)
        if work.block_weight[block] + weights[v] > l_max:
            continue
        drained = {}
        for u in pulled:
            drained[labels[u]] = drained.get(labels[u], 0) + weights[u]
        if any(nonempty[b] and work.block_weight[b] - w <= 0 for b, w in drained.items()):
            continue

        log.append((v, k))
        work.move(v, block)
        left_separator.add(v)
        for u in pulled:
            log.append((u, labels[u]))
            work.move(u, k)

        score = _score(work)
        if score < best_score:
            best_score = score
            best_len = len(log)
            unsuccessful = 0
        else:
            unsuccessful += 1

        touched = set(pulled)
        for u in [v, *pulled]:
            touched.update(g.adjacency[u])
        for u in touched:
            if labels[u] == k and u not in left_separator:
                push(u)

    for u, old in reversed(log[best_len:]):
        work.move(u, old)

    if work.separator_weight > sol.separator_weight:
        logger.warning("FM returned a heavier separator, keeping the input")
        return sol
    return work
