# sepevo/flow/problem.py

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Union

from sepevo.constants import RegionMode
from sepevo.errors import InvalidSolutionError
from sepevo.flow.network import FlowNetwork
from sepevo.graph.core import Graph, SeparatorSolution

logger = logging.getLogger(__name__)

# ==================== Flow Problem ====================

@dataclass
class FlowProblem:
    """
    Node-split network over a region of the graph. Region node i owns network nodes
    2i (in) and 2i+1 (out) joined by an arc of capacity c(v); graph edges inside the
    region become infinite arcs out(u) -> in(v) in both directions.
    """
    region: List[int]
    local: Dict[int, int]
    network: FlowNetwork
    source: int
    sink: int
    capacities: List[int]
    source_border: Set[int] = field(default_factory=set)
    sink_border: Set[int] = field(default_factory=set)
    source_block: int = 0
    sink_block: int = 1

    @classmethod
    def build(
        cls,
        g: Graph,
        region: Sequence[int],
        source_border: Set[int],
        sink_border: Set[int],
        source_block: int = 0,
        sink_block: int = 1,
    ) -> "FlowProblem":
        region = list(region)
        local = {v: i for i, v in enumerate(region)}
        size = len(region)
        infinity = g.total_weight + 1
        network = FlowNetwork(2 * size + 2)
        source, sink = 2 * size, 2 * size + 1
        weights = g.weights
        capacities = [weights[v] for v in region]

        for i, v in enumerate(region):
            network.add_arc(2 * i, 2 * i + 1, capacities[i])
            for u in g.adjacency[v]:
                j = local.get(u)
                if j is not None:
                    network.add_arc(2 * i + 1, 2 * j, infinity)
        for v in source_border:
            network.add_arc(source, 2 * local[v], infinity)
        for v in sink_border:
            network.add_arc(2 * local[v] + 1, sink, infinity)

        return cls(
            region=region,
            local=local,
            network=network,
            source=source,
            sink=sink,
            capacities=capacities,
            source_border=set(source_border),
            sink_border=set(sink_border),
            source_block=source_block,
            sink_block=sink_block,
        )


@dataclass
class FlowResult:
    value: int
    min_cut_nodes: Set[int]
    sink_cut_nodes: Set[int]
    source_side: Set[int]
    far_from_sink: Set[int]


def max_flow(fp: FlowProblem) -> FlowResult:
    """
    Solve the flow problem and read off the minimum node cut closest to the source
    (`min_cut_nodes`) and the one closest to the sink (`sink_cut_nodes`).
    """
    value = fp.network.max_flow(fp.source, fp.sink)
    from_source = fp.network.reachable_from(fp.source)
    to_sink = fp.network.reaching(fp.sink)

    cut, sink_cut, source_side, far_from_sink = set(), set(), set(), set()
    for i, v in enumerate(fp.region):
        if from_source[2 * i] and not from_source[2 * i + 1]:
            cut.add(v)
        if to_sink[2 * i + 1] and not to_sink[2 * i]:
            sink_cut.add(v)
        if from_source[2 * i + 1]:
            source_side.add(v)
        if not to_sink[2 * i + 1]:
            far_from_sink.add(v)

    for nodes in (cut, sink_cut):
        weight = sum(fp.capacities[fp.local[v]] for v in nodes)
        if weight != value:
            raise InvalidSolutionError(f"max flow {value} differs from cut weight {weight}")
    return FlowResult(value, cut, sink_cut, source_side, far_from_sink)


def apply_cut(sol: SeparatorSolution, fp: FlowProblem, result: FlowResult, sink_side_cut: bool = False) -> SeparatorSolution:
    """Relabel the region according to one of the two minimum cuts; nodes outside keep their labels."""
    out = sol.copy()
    if sink_side_cut:
        separator = result.sink_cut_nodes
        source_nodes = result.far_from_sink
    else:
        separator = result.min_cut_nodes
        source_nodes = result.source_side
    for v in fp.region:
        if v in separator:
            out.move(v, sol.separator)
        elif v in source_nodes:
            out.move(v, fp.source_block)
        else:
            out.move(v, fp.sink_block)
    return out

# ==================== Region Construction ====================

def region_budgets(sol: SeparatorSolution, mode: RegionMode, alpha: float) -> List[float]:
    """Weight each BFS may consume from block 0 and block 1."""
    separator = sol.separator_weight
    budgets = []
    for block in (0, 1):
        other = sol.block_weight[1 - block]
        strict = max(0.0, sol.l_max - other - separator)
        if mode is RegionMode.AGGRESSIVE:
            budgets.append(max(0.0, alpha * strict + (alpha - 1.0) * separator))
        else:
            budgets.append(strict)
    return budgets


def _grow(
    g: Graph,
    sol: SeparatorSolution,
    seeds: List[int],
    block: int,
    budget: float,
    in_region: List[bool],
) -> List[int]:
    labels = sol.assignment
    weights = g.weights
    remaining = sol.block_weight[block]
    consumed = 0
    taken: List[int] = []
    queue = deque(seeds)
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if in_region[v] or labels[v] != block:
                continue
            w = weights[v]
            # never swallow the whole block, the flow needs a border on each side
            if consumed + w > budget or consumed + w >= remaining:
                return taken
            consumed += w
            in_region[v] = True
            taken.append(v)
            queue.append(v)
    return taken


def construct_flow_region(
    g: Graph,
    sol: SeparatorSolution,
    mode: Union[RegionMode, str] = RegionMode.STRICT,
    alpha: float = 1.0,
    rng: Optional[random.Random] = None,
) -> FlowProblem:
    """
    Grow a region around the separator by one BFS into each block. In strict mode every
    minimum cut of the resulting problem is a balanced separator.
    """
    mode = RegionMode(mode)
    if sol.k != 2:
        raise ValueError(f"flow regions need a 2-way solution, got k={sol.k}")
    separator = sol.separator_nodes()
    if not separator:
        raise ValueError("nothing to refine: the separator is empty")

    seeds = list(separator)
    if rng is not None:
        rng.shuffle(seeds)
    in_region = [False] * g.n
    for v in separator:
        in_region[v] = True

    budgets = region_budgets(sol, mode, alpha)
    region = list(separator)
    for block in (0, 1):
        region.extend(_grow(g, sol, seeds, block, budgets[block], in_region))

    source_block = 0 if sol.block_weight[0] >= sol.block_weight[1] else 1
    sink_block = 1 - source_block
    labels = sol.assignment
    source_border, sink_border = set(), set()
    for v in region:
        for u in g.adjacency[v]:
            if in_region[u]:
                continue
            if labels[u] == source_block:
                source_border.add(v)
            elif labels[u] == sink_block:
                sink_border.add(v)

    logger.debug(
        "%s flow region: %d nodes (separator %d), borders %d/%d",
        mode.value, len(region), len(separator), len(source_border), len(sink_border),
    )
    return FlowProblem.build(g, region, source_border, sink_border, source_block, sink_block)
