# sepevo/coarsening/rating.py

from dataclasses import dataclass
from typing import Union

import numpy as np

from sepevo.constants import RatingFunction
from sepevo.graph.core import Graph


@dataclass(frozen=True)
class EdgeRating:
    """One score per CSR entry, aligned with `Graph.targets` (symmetric)."""
    name: RatingFunction
    scores: np.ndarray


def rate_edges(g: Graph, fn: Union[RatingFunction, str]) -> EdgeRating:
    try:
        fn = RatingFunction(fn)
    except ValueError:
        raise ValueError(f"unknown rating function {fn!r}, expected one of {RatingFunction.list()}")

    weight = g.edge_weight.astype(np.float64)
    if fn is RatingFunction.WEIGHT:
        return EdgeRating(fn, weight)

    src = np.repeat(np.arange(g.n), np.diff(g.offsets))
    vw = g.node_weight.astype(np.float64)
    return EdgeRating(fn, weight * weight / (vw[src] * vw[g.targets]))
