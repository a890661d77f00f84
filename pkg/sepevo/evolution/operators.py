# sepevo/evolution/operators.py

import logging
import random
from typing import Optional

from sepevo.coarsening.hierarchy import StopCriterion, build_hierarchy
from sepevo.errors import InfeasibleInstanceError
from sepevo.evolution.population import Individual
from sepevo.graph.core import Graph, cut_edges, is_valid
from sepevo.kway.pairwise import refine_kway
from sepevo.multilevel.initial import initial_separator
from sepevo.multilevel.solver import coarse_weight_bound, refine_upward, restrict_to_coarsest, solve
from sepevo.types import SolverConfig

logger = logging.getLogger(__name__)


def create_individual(
    g: Graph,
    k: int,
    epsilon: float,
    config: SolverConfig,
    rng: random.Random,
    birth_round: int = 0,
) -> Individual:
    return Individual(solve(g, k, epsilon, config, rng), birth_round)


def combine(
    g: Graph,
    first: Individual,
    second: Individual,
    config: Optional[SolverConfig] = None,
    rng: Optional[random.Random] = None,
    birth_round: int = 0,
) -> Individual:
    """
    Coarsen while keeping every cut edge of both parents, start from the fitter parent on
    the coarsest graph and refine back up. The offspring is never worse than that parent.
    """
    rng = rng or random.Random(0)
    if second.fitness < first.fitness:
        first, second = second, first
    parent = first.solution
    config = config or SolverConfig(imbalance=parent.epsilon)

    blocked = cut_edges(g, parent) | cut_edges(g, second.solution)
    bound = coarse_weight_bound(g, parent.k, parent.epsilon)
    hierarchy = build_hierarchy(g, blocked, StopCriterion.no_contractible_edge(), rng, config.rating, bound)

    coarse = restrict_to_coarsest(hierarchy, parent)
    coarse = refine_kway(hierarchy.coarsest.graph, coarse, config, rng)
    child = refine_upward(hierarchy, coarse, config, rng)

    report = is_valid(g, child)
    if not report.valid or not report.balanced or child.separator_weight > parent.separator_weight:
        logger.warning(
            "combine offspring (weight %d) would break dominance over %d, keeping the parent",
            child.separator_weight, parent.separator_weight,
        )
        child = parent.copy()
    return Individual(child, birth_round)


def mutate(
    g: Graph,
    parent: Individual,
    config: Optional[SolverConfig] = None,
    rng: Optional[random.Random] = None,
    birth_round: int = 0,
) -> Individual:
    """
    Coarsen while keeping the parent's cut edges, compute a fresh initial separator on
    the coarsest graph and refine back up. The offspring may be worse than the parent.
    """
    rng = rng or random.Random(0)
    sol = parent.solution
    config = config or SolverConfig(imbalance=sol.epsilon)

    bound = coarse_weight_bound(g, sol.k, sol.epsilon)
    hierarchy = build_hierarchy(g, cut_edges(g, sol), StopCriterion.no_contractible_edge(), rng, config.rating, bound)
    try:
        coarse = initial_separator(hierarchy.coarsest.graph, sol.k, sol.epsilon, rng, config, sol.l_max)
    except InfeasibleInstanceError as e:
        logger.debug("mutation skipped: %s", e)
        return Individual(sol.copy(), birth_round)
    child = refine_upward(hierarchy, coarse, config, rng)

    report = is_valid(g, child)
    if not report.valid or not report.balanced:
        logger.warning("mutation produced an unusable separator, keeping the parent")
        child = sol.copy()
    return Individual(child, birth_round)
