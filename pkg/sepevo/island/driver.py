# sepevo/island/driver.py

import logging
import random
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from sepevo.constants import EventKind
from sepevo.evolution.operators import combine, mutate
from sepevo.evolution.population import (
    Individual,
    Population,
    estimate_population_size,
    insert_with_eviction,
    tournament_select,
)
from sepevo.graph.core import Graph, SeparatorSolution
from sepevo.island.protocol import PeState, communicate
from sepevo.island.transport import Network
from sepevo.multilevel.solver import solve
from sepevo.types import EventRecord, SolverConfig

logger = logging.getLogger(__name__)

Creator = Callable[[Graph, int, float, SolverConfig, random.Random], SeparatorSolution]


@dataclass
class RunResult:
    best: SeparatorSolution
    events: List[EventRecord] = field(default_factory=list)
    best_pe: int = 0

# ==================== Clocks ====================

class VirtualClock:
    """Per-island time that advances by a fixed tick per operation."""

    def __init__(self, tick: float):
        self.tick = tick
        self.now = 0.0

    def __call__(self) -> float:
        return self.now

    def advance(self) -> None:
        self.now += self.tick


class WallClock:
    def __init__(self, start: float):
        self.start = start

    def __call__(self) -> float:
        return time.perf_counter() - self.start

    def advance(self) -> None:
        pass

# ==================== Island Worker ====================

class IslandWorker:
    """One island running the evolutionary main loop (or repeated runs when `evolve` is off)."""

    def __init__(
        self,
        pe_id: int,
        graph: Graph,
        k: int,
        epsilon: float,
        t_total: float,
        config: SolverConfig,
        network: Network,
        seed: int,
        clock,
        creator: Creator,
        evolve: bool = True,
    ):
        self.graph = graph
        self.k = k
        self.epsilon = epsilon
        self.t_total = t_total
        self.config = config
        self.network = network
        self.clock = clock
        self.creator = creator
        self.evolve = evolve
        self.state = PeState.create(
            pe_id, len(network.mailboxes), graph, Population(1), seed, network.inbox(pe_id), clock,
        )

    @property
    def rng(self) -> random.Random:
        return self.state.rng

    @property
    def done(self) -> bool:
        return self.clock() >= self.t_total

    def _create(self) -> Individual:
        individual = Individual(self.creator(self.graph, self.k, self.epsilon, self.config, self.rng), self.state.round)
        self.clock.advance()
        self.state.record(individual.fitness, EventKind.CREATE)
        return individual

    def start(self) -> None:
        """Create the first individual and size the population from its runtime."""
        began = self.clock()
        first = self._create()
        t_one = max(self.clock() - began, 1e-9)
        size = estimate_population_size(t_one, self.t_total, self.config.fraction) if self.evolve else 1
        self.state.population = Population(size)
        self.state.population.add(first)
        if self.done:
            logger.warning(
                "island %d: time budget %.2fs is too small, one individual took %.2fs",
                self.state.pe_id, self.t_total, t_one,
            )
        else:
            logger.info("island %d: population size %d", self.state.pe_id, size)

    def step(self) -> None:
        """One iteration of the main loop."""
        state = self.state
        state.round += 1
        if not self.evolve:
            offspring = self._create()
            if offspring.fitness < state.population.best().fitness:
                state.population.members = [offspring]
            return

        pop = state.population
        if self.clock() < self.t_total / self.config.fraction:
            insert_with_eviction(pop, self._create(), self.rng)
        elif self.rng.random() < self.config.mutation_prob:
            child = mutate(self.graph, tournament_select(pop, self.rng), self.config, self.rng, state.round)
            self.clock.advance()
            state.record(child.fitness, EventKind.MUTATE)
            insert_with_eviction(pop, child, self.rng)
        else:
            first = tournament_select(pop, self.rng)
            second = tournament_select(pop, self.rng)
            child = combine(self.graph, first, second, self.config, self.rng, state.round)
            self.clock.advance()
            state.record(child.fitness, EventKind.COMBINE)
            insert_with_eviction(pop, child, self.rng)

        for target, message in communicate(state):
            self.network.deliver(target, message)

    def best(self) -> Individual:
        return self.state.population.best()

# ==================== Drivers ====================

def _collect(workers: List[IslandWorker]) -> RunResult:
    for worker in workers:
        # late messages may still carry improvements
        for message in worker.state.inbox.drain():
            worker.state.population.members.append(Individual(message.payload, worker.state.round))
    best_pe = min(range(len(workers)), key=lambda i: (workers[i].best().fitness, i))
    events = sorted((e for w in workers for e in w.state.events), key=lambda e: (e.t, e.pe))
    return RunResult(best=workers[best_pe].best().solution, events=events, best_pe=best_pe)


def run(
    g: Graph,
    k: int,
    epsilon: float,
    p: int = 1,
    t_total: float = 60.0,
    config: Optional[SolverConfig] = None,
    seed: int = 0,
    virtual_clock: bool = False,
    evolve: bool = True,
    creator: Optional[Creator] = None,
) -> RunResult:
    """
    Run p islands until `t_total` seconds have passed on every island. With
    `virtual_clock` the islands run round-robin in this thread on a simulated clock.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if t_total <= 0:
        raise ValueError("t_total must be positive")
    config = config or SolverConfig(imbalance=epsilon)
    creator = creator or solve
    network = Network(p)

    if virtual_clock:
        clocks = [VirtualClock(config.virtual_tick) for _ in range(p)]
    else:
        start = time.perf_counter()
        clocks = [WallClock(start) for _ in range(p)]
    workers = [
        IslandWorker(pe, g, k, epsilon, t_total, config, network, seed, clocks[pe], creator, evolve)
        for pe in range(p)
    ]

    if virtual_clock:
        for worker in workers:
            worker.start()
        while not all(w.done for w in workers):
            for worker in workers:
                if not worker.done:
                    worker.step()
    else:
        errors: List[BaseException] = []

        def loop(worker: IslandWorker) -> None:
            try:
                worker.start()
                while not worker.done:
                    worker.step()
            except BaseException as e:
                errors.append(e)

        threads = [threading.Thread(target=loop, args=(w,), name=f"island-{i}") for i, w in enumerate(workers)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        if errors:
            raise errors[0]

    result = _collect(workers)
    logger.info("islands finished: best separator weight %d on island %d", result.best.separator_weight, result.best_pe)
    return result
