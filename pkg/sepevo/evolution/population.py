# sepevo/evolution/population.py

import logging
import random
from dataclasses import dataclass, field
from typing import AbstractSet, Iterator, List, Optional

from sepevo.constants import DEFAULT_MIN_POPULATION
from sepevo.errors import InvalidSolutionError
from sepevo.graph.core import SeparatorSolution

logger = logging.getLogger(__name__)

# ==================== Individuals ====================

@dataclass
class Individual:
    solution: SeparatorSolution
    birth_round: int = 0
    fitness: int = field(init=False)

    def __post_init__(self):
        self.fitness = self.solution.separator_weight

    @property
    def separator(self) -> frozenset:
        return self.solution.separator_set()


@dataclass
class InsertOutcome:
    inserted: bool
    evicted: Optional[Individual] = None


class Population:
    """Bounded multiset of valid, balanced individuals owned by one island."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("population capacity must be at least 1")
        self.capacity = capacity
        self.members: List[Individual] = []

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Individual]:
        return iter(self.members)

    @property
    def full(self) -> bool:
        return len(self.members) >= self.capacity

    def best(self) -> Individual:
        if not self.members:
            raise ValueError("empty population")
        return min(self.members, key=lambda ind: ind.fitness)

    def add(self, individual: Individual) -> None:
        if not individual.solution.is_balanced():
            raise InvalidSolutionError("population members must be balanced")
        self.members.append(individual)

# ==================== Sizing & Selection ====================

def estimate_population_size(t_one: float, t_total: float, f: float) -> int:
    """S = max(3, round((t_total / f) / t_one))."""
    if t_one <= 0:
        raise ValueError("t_one must be positive")
    if f < 1:
        raise ValueError("f must be at least 1")
    return max(DEFAULT_MIN_POPULATION, round((t_total / f) / t_one))


def tournament_select(pop: Population, rng: random.Random) -> Individual:
    """Fitter of two uniform draws (with replacement); equal fitness picks either at random."""
    if not len(pop):
        raise ValueError("cannot select from an empty population")
    first = rng.choice(pop.members)
    second = rng.choice(pop.members)
    if first.fitness == second.fitness:
        return first if rng.random() < 0.5 else second
    return first if first.fitness < second.fitness else second

# ==================== Replacement ====================

def similarity(first: AbstractSet[int], second: AbstractSet[int]) -> int:
    """Size of the symmetric difference of two separators (0 means identical)."""
    return len(set(first) ^ set(second))


def insert_with_eviction(pop: Population, offspring: Individual, rng: Optional[random.Random] = None) -> InsertOutcome:
    """
    Below capacity the offspring is simply added. Otherwise the member most similar to
    it among those at least as heavy is replaced; if none exists the offspring is dropped.
    """
    rng = rng or random.Random(0)
    if not pop.full:
        pop.add(offspring)
        return InsertOutcome(inserted=True)

    candidates = [ind for ind in pop.members if ind.fitness >= offspring.fitness]
    if not candidates:
        return InsertOutcome(inserted=False)

    target = offspring.separator
    scored = [(similarity(ind.separator, target), -ind.fitness, rng.random(), i) for i, ind in enumerate(candidates)]
    victim = candidates[min(scored)[3]]
    pop.members = [ind for ind in pop.members if ind is not victim]
    pop.add(offspring)
    logger.debug("evicted fitness %d for offspring %d", victim.fitness, offspring.fitness)
    return InsertOutcome(inserted=True, evicted=victim)
