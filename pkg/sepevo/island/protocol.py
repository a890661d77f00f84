# sepevo/island/protocol.py

import logging
import math
import random
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, FrozenSet, List, Optional, Set, Tuple

from sepevo.constants import EventKind
from sepevo.errors import InvalidSolutionError
from sepevo.evolution.population import Individual, Population, insert_with_eviction
from sepevo.graph.core import Graph, SeparatorSolution, is_valid
from sepevo.types import EventRecord

if TYPE_CHECKING:
    from sepevo.island.transport import Mailbox

logger = logging.getLogger(__name__)


def send_rounds(p: int) -> int:
    """Sends granted to every new best: ceil(log2 p)."""
    return math.ceil(math.log2(p)) if p > 1 else 0


@dataclass(frozen=True)
class Message:
    sender: int
    payload: SeparatorSolution
    timestamp: float
    holders: FrozenSet[int] = frozenset()


@dataclass
class PeState:
    pe_id: int
    p: int
    graph: Graph
    population: Population
    rng: random.Random
    inbox: "Mailbox"
    clock: Callable[[], float]
    best_sent_to: Set[int] = field(default_factory=set)
    rounds_remaining: int = 0
    best_fitness: Optional[int] = None
    events: List[EventRecord] = field(default_factory=list)
    round: int = 0

    @classmethod
    def create(
        cls,
        pe_id: int,
        p: int,
        graph: Graph,
        population: Population,
        seed: int,
        inbox: "Mailbox",
        clock: Callable[[], float],
    ) -> "PeState":
        return cls(pe_id, p, graph, population, random.Random(seed ^ pe_id), inbox, clock)

    def record(self, size: int, kind: EventKind) -> None:
        self.events.append(EventRecord(t=self.clock(), size=size, pe=self.pe_id, kind=kind))


def _refresh_best(state: PeState, holders: FrozenSet[int]) -> None:
    """On a new best the sent-to set restarts from the islands known to hold it, not from empty."""
    best = state.population.best().fitness
    if state.best_fitness is not None and best >= state.best_fitness:
        return
    state.best_fitness = best
    state.rounds_remaining = send_rounds(state.p)
    state.best_sent_to = set(holders) - {state.pe_id}


def communicate(state: PeState, rng: Optional[random.Random] = None) -> List[Tuple[int, Message]]:
    """
    One protocol step: drain the inbox into the population, then forward the current
    best to one uniformly chosen island that has not received it yet.
    """
    rng = rng or state.rng
    incoming: Optional[Tuple[int, FrozenSet[int]]] = None
    for message in state.inbox.drain():
        report = is_valid(state.graph, message.payload)
        if not report.valid or not report.balanced:
            raise InvalidSolutionError(f"island {state.pe_id} received an unusable separator from {message.sender}")
        individual = Individual(message.payload.copy(), state.round)
        state.record(individual.fitness, EventKind.RECV)
        if insert_with_eviction(state.population, individual, rng).inserted:
            if incoming is None or individual.fitness < incoming[0]:
                incoming = (individual.fitness, message.holders)

    if len(state.population):
        best = state.population.best().fitness
        holders = incoming[1] if incoming is not None and incoming[0] == best else frozenset()
        _refresh_best(state, holders)

    if state.rounds_remaining <= 0 or state.best_fitness is None:
        return []
    others = [q for q in range(state.p) if q != state.pe_id and q not in state.best_sent_to]
    if not others:
        return []
    target = rng.choice(others)
    state.best_sent_to.add(target)
    state.rounds_remaining -= 1
    payload = state.population.best().solution.copy()
    message = Message(
        sender=state.pe_id,
        payload=payload,
        timestamp=state.clock(),
        holders=frozenset(state.best_sent_to | {state.pe_id}),
    )
    logger.debug("island %d sends weight %d to %d", state.pe_id, payload.separator_weight, target)
    return [(target, message)]
