# sepevo/types.py

from typing import List, Literal, NewType, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from sepevo import config
from sepevo.constants import EventKind, RatingFunction

# ==================== Aliases ====================

NodeID = NewType("NodeID", int)
BlockID = NewType("BlockID", int)
PeID = NewType("PeID", int)
Edge = Tuple[int, int]

# ==================== Solver Configuration ====================

class SolverConfig(BaseModel):
    imbalance: float = config.DEFAULT_IMBALANCE
    rating: RatingFunction = RatingFunction(config.DEFAULT_RATING)
    min_coarsest: int = config.DEFAULT_MIN_COARSEST
    coarsest_per_block: int = config.DEFAULT_COARSEST_PER_BLOCK
    coarsest_override: Optional[int] = None
    initial_attempts: int = Field(default=config.DEFAULT_INITIAL_ATTEMPTS, ge=1)
    flow_alpha: float = config.DEFAULT_FLOW_ALPHA
    flow_retries: int = Field(default=config.DEFAULT_FLOW_RETRIES, ge=0)
    fm_patience: int = Field(default=config.DEFAULT_FM_PATIENCE, ge=1)
    pairwise_rounds: int = Field(default=config.DEFAULT_PAIRWISE_ROUNDS, ge=0)
    fraction: float = config.DEFAULT_FRACTION
    mutation_prob: float = config.DEFAULT_MUTATION_PROB
    virtual_tick: float = config.VIRTUAL_TICK

    @field_validator("imbalance")
    @classmethod
    def _non_negative(cls, value: float) -> float:
        if value < 0:
            raise ValueError("imbalance must be non-negative")
        return value

    @field_validator("flow_alpha", "virtual_tick")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("fraction")
    @classmethod
    def _at_least_one(cls, value: float) -> float:
        if value < 1:
            raise ValueError("fraction must be at least 1")
        return value

    @field_validator("mutation_prob")
    @classmethod
    def _probability(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ValueError("mutation_prob must lie in [0, 1]")
        return value

    def coarsest_nodes(self, k: int) -> int:
        if self.coarsest_override is not None:
            return self.coarsest_override
        return max(self.min_coarsest, self.coarsest_per_block * k)

# ==================== Validity Reports ====================

class Violation(BaseModel):
    kind: Literal["edge", "block", "cache"]
    detail: str
    edge: Optional[Edge] = None
    block: Optional[int] = None


class ValidityReport(BaseModel):
    valid: bool
    balanced: bool
    violations: List[Violation] = []
    warnings: List[str] = []

# ==================== Event Log ====================

class EventRecord(BaseModel):
    t: float
    size: int
    pe: int
    kind: EventKind
