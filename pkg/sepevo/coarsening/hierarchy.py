# sepevo/coarsening/hierarchy.py

import logging
import random
from dataclasses import dataclass, field
from typing import List, Optional, Set

from sepevo.coarsening.matching import gpa_matching
from sepevo.coarsening.rating import rate_edges
from sepevo.constants import RatingFunction, StopRule
from sepevo.graph.core import ContractionMap, Graph, contract
from sepevo.types import Edge

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StopCriterion:
    kind: StopRule
    threshold: int = 0

    @classmethod
    def node_threshold(cls, threshold: int) -> "StopCriterion":
        return cls(StopRule.NODE_THRESHOLD, threshold)

    @classmethod
    def no_contractible_edge(cls) -> "StopCriterion":
        return cls(StopRule.NO_CONTRACTIBLE_EDGE)


@dataclass
class Level:
    """One hierarchy level; `contraction` leads to the next coarser level (None on the coarsest)."""
    graph: Graph
    blocked: Set[Edge] = field(default_factory=set)
    matching: List[Edge] = field(default_factory=list)
    contraction: Optional[ContractionMap] = None


@dataclass
class Hierarchy:
    levels: List[Level]

    @property
    def finest(self) -> Level:
        return self.levels[0]

    @property
    def coarsest(self) -> Level:
        return self.levels[-1]

    @property
    def depth(self) -> int:
        return len(self.levels)

    def contractions(self) -> List[ContractionMap]:
        return [level.contraction for level in self.levels[:-1]]


def map_blocked(blocked: Set[Edge], cmap: ContractionMap) -> Set[Edge]:
    """A coarse edge is blocked if any fine edge merged into it was blocked."""
    f2c = cmap.mapping
    coarse = set()
    for u, v in blocked:
        cu, cv = f2c[u], f2c[v]
        if cu != cv:
            coarse.add((min(cu, cv), max(cu, cv)))
    return coarse


def build_hierarchy(
    g: Graph,
    blocked: Optional[Set[Edge]],
    stop: StopCriterion,
    rng: random.Random,
    rating: RatingFunction = RatingFunction.EXPANSION2,
    max_node_weight: Optional[float] = None,
) -> Hierarchy:
    blocked = {(min(u, v), max(u, v)) for u, v in (blocked or set())}
    levels = [Level(graph=g, blocked=blocked)]
    while True:
        current = levels[-1]
        if stop.kind is StopRule.NODE_THRESHOLD and current.graph.n <= stop.threshold:
            break
        matching = gpa_matching(
            current.graph, rate_edges(current.graph, rating), current.blocked, rng, max_node_weight,
        )
        if not matching:
            break
        cmap = contract(current.graph, matching)
        current.matching = matching
        current.contraction = cmap
        levels.append(Level(graph=cmap.coarse, blocked=map_blocked(current.blocked, cmap)))

    logger.debug(
        "hierarchy: %d levels, %d -> %d nodes",
        len(levels), g.n, levels[-1].graph.n,
    )
    return Hierarchy(levels)
