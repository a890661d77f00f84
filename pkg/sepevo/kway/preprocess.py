# sepevo/kway/preprocess.py

import logging
from collections import deque
from typing import Dict, Set

from sepevo.graph.core import Graph, SeparatorSolution, adjacent_blocks, quotient

logger = logging.getLogger(__name__)


def preprocess(g: Graph, sol: SeparatorSolution) -> SeparatorSolution:
    """
    Make every separator node directly separating. Nodes touching a single block are
    absorbed into it, nodes touching none go to the lightest block. Nodes only ever
    leave the separator, so adjacent-block counts only grow and a node that reaches
    two is final.
    """
    work = sol.copy()
    k = work.k
    labels = work.assignment
    blocks: Dict[int, Set[int]] = {}
    buckets = {0: deque(), 1: deque()}
    for v in work.separator_nodes():
        blocks[v] = adjacent_blocks(g, work, v)
        if len(blocks[v]) < 2:
            buckets[len(blocks[v])].append(v)

    absorbed = 0
    while buckets[1] or buckets[0]:
        priority = 1 if buckets[1] else 0
        v = buckets[priority].popleft()
        if labels[v] != k or len(blocks[v]) != priority:
            continue
        target = next(iter(blocks[v])) if priority == 1 else work.lightest_block()
        work.move(v, target)
        absorbed += 1
        for u in g.adjacency[v]:
            if labels[u] == k and target not in blocks[u]:
                blocks[u].add(target)
                if len(blocks[u]) == 1:
                    buckets[1].append(u)

    if absorbed:
        logger.debug("preprocessing absorbed %d separator nodes", absorbed)
    return work


def adjoint_pairs(g: Graph, sol: SeparatorSolution) -> Set[tuple]:
    """Block pairs (i < j) joined through at least one separator node."""
    return quotient(g, sol).edges
