# sepevo/constants.py

from enum import Enum

# ==================== Algorithm Choices ====================

class RatingFunction(str, Enum):
    EXPANSION2 = "expansion2"
    WEIGHT = "weight"

    @classmethod
    def list(cls):
        return [rating.value for rating in cls]


class StopRule(str, Enum):
    NODE_THRESHOLD = "node_threshold"
    NO_CONTRACTIBLE_EDGE = "no_contractible_edge"


class RegionMode(str, Enum):
    STRICT = "strict"
    AGGRESSIVE = "aggressive"


class SolveMode(str, Enum):
    ADV = "adv"
    ADVEVO = "advevo"
    SIMPLE = "simple"
    REPS = "reps"
    SIMPLE_REPS = "simple-reps"

    @classmethod
    def list(cls):
        return [mode.value for mode in cls]


class EventKind(str, Enum):
    CREATE = "create"
    COMBINE = "combine"
    MUTATE = "mutate"
    RECV = "recv"

# ==================== CLI Exit Codes ====================

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_GRAPH = 2
EXIT_INFEASIBLE = 3

# ==================== Defaults (used if .env fails to load) ====================

# Fallbacks only: config.py reads the real defaults from .env
DEFAULT_IMBALANCE = 0.03
DEFAULT_FRACTION = 10.0
DEFAULT_MUTATION_PROB = 0.1
DEFAULT_FLOW_ALPHA = 2.0
DEFAULT_FLOW_RETRIES = 3
DEFAULT_FM_PATIENCE = 25
DEFAULT_PAIRWISE_ROUNDS = 10
DEFAULT_MIN_COARSEST = 1000
DEFAULT_COARSEST_PER_BLOCK = 30
DEFAULT_INITIAL_ATTEMPTS = 4
DEFAULT_MIN_POPULATION = 3
DEFAULT_VIRTUAL_TICK = 1.0

# ==================== Exports ====================

__all__ = [
    "RatingFunction",
    "StopRule",
    "RegionMode",
    "SolveMode",
    "EventKind",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_BAD_GRAPH",
    "EXIT_INFEASIBLE",
    "DEFAULT_IMBALANCE",
    "DEFAULT_FRACTION",
    "DEFAULT_MUTATION_PROB",
    "DEFAULT_FLOW_ALPHA",
    "DEFAULT_FLOW_RETRIES",
    "DEFAULT_FM_PATIENCE",
    "DEFAULT_PAIRWISE_ROUNDS",
    "DEFAULT_MIN_COARSEST",
    "DEFAULT_COARSEST_PER_BLOCK",
    "DEFAULT_INITIAL_ATTEMPTS",
    "DEFAULT_MIN_POPULATION",
    "DEFAULT_VIRTUAL_TICK",
]
