# sepevo/flow/improve.py

import logging
import random
from typing import List, Optional

from sepevo.config import DEFAULT_FLOW_ALPHA, DEFAULT_FLOW_RETRIES
from sepevo.constants import RegionMode
from sepevo.errors import InvalidSolutionError
from sepevo.flow.problem import apply_cut, construct_flow_region, max_flow
from sepevo.graph.core import Graph, SeparatorSolution

logger = logging.getLogger(__name__)

MAX_PASSES = 20


def _keeps_blocks(before: SeparatorSolution, after: SeparatorSolution) -> bool:
    return all(a > 0 or b == 0 for a, b in zip(after.block_weight, before.block_weight))


def _flow_candidate(
    g: Graph,
    sol: SeparatorSolution,
    mode: RegionMode,
    alpha: float,
    rng: random.Random,
) -> Optional[List[SeparatorSolution]]:
    """Both minimum cuts of one region applied to `sol`; None if the region is degenerate."""
    fp = construct_flow_region(g, sol, mode, alpha, rng)
    if not fp.source_border or not fp.sink_border:
        return None
    result = max_flow(fp)
    return [apply_cut(sol, fp, result), apply_cut(sol, fp, result, sink_side_cut=True)]


def _improve_once(
    g: Graph,
    sol: SeparatorSolution,
    alpha: float,
    max_retries: int,
    rng: random.Random,
) -> Optional[SeparatorSolution]:
    attempts = [(RegionMode.AGGRESSIVE, alpha / 2 ** i) for i in range(max_retries + 1) if alpha / 2 ** i > 1.0]
    attempts.append((RegionMode.STRICT, 1.0))
    for mode, a in attempts:
        cuts = _flow_candidate(g, sol, mode, a, rng)
        if cuts is None:
            continue
        balanced = [c for c in cuts if c.is_balanced() and _keeps_blocks(sol, c)]
        if not balanced:
            logger.debug("%s region with alpha %.2f gave an imbalanced cut, shrinking", mode.value, a)
            continue
        best = min(balanced, key=lambda c: (c.separator_weight, max(c.block_weight)))
        if best.separator_weight < sol.separator_weight:
            return best
        return None
    return None


def flow_improve_2way(
    g: Graph,
    sol: SeparatorSolution,
    alpha: float = DEFAULT_FLOW_ALPHA,
    max_retries: int = DEFAULT_FLOW_RETRIES,
    rng: Optional[random.Random] = None,
) -> SeparatorSolution:
    """
    Repeatedly replace the separator by a minimum cut of a flow region around it. Larger
    (aggressive) regions are tried first and shrunk while their cuts are imbalanced; the
    strict region is the last resort. Never returns a heavier separator than the input.
    """
    rng = rng or random.Random(0)
    if sol.k != 2 or not sol.separator_weight:
        return sol
    current = sol
    for _ in range(MAX_PASSES):
        try:
            candidate = _improve_once(g, current, alpha, max_retries, rng)
        except InvalidSolutionError as e:
            logger.warning("flow refinement aborted: %s", e)
            break
        if candidate is None or not candidate.separator_weight < current.separator_weight:
            break
        current = candidate
        if not current.separator_weight:
            break

    if current.separator_weight > sol.separator_weight or (sol.is_balanced() and not current.is_balanced()):
        logger.warning("flow refinement lost quality, keeping the input")
        return sol
    return current
