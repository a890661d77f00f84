# sepevo/config.py

import os
from dotenv import load_dotenv

from sepevo import constants

# Load .env file into environment
load_dotenv()


def _float(name: str, default: float) -> float:
    raw = os.getenv(name, default)
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ValueError(f"❌ {name} must be a number, got {raw!r}")


def _int(name: str, default: int) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise ValueError(f"❌ {name} must be an integer, got {raw!r}")

# ==================== Balance & Evolution ====================

DEFAULT_IMBALANCE = _float("SEPEVO_IMBALANCE", constants.DEFAULT_IMBALANCE)
if DEFAULT_IMBALANCE < 0:
    raise ValueError("❌ SEPEVO_IMBALANCE must be non-negative")

DEFAULT_FRACTION = _float("SEPEVO_FRACTION", constants.DEFAULT_FRACTION)
if DEFAULT_FRACTION < 1:
    raise ValueError("❌ SEPEVO_FRACTION must be at least 1")

DEFAULT_MUTATION_PROB = _float("SEPEVO_MUTATION_PROB", constants.DEFAULT_MUTATION_PROB)
if not 0.0 <= DEFAULT_MUTATION_PROB <= 1.0:
    raise ValueError("❌ SEPEVO_MUTATION_PROB must lie in [0, 1]")

# ==================== Refinement ====================

DEFAULT_FLOW_ALPHA = _float("SEPEVO_FLOW_ALPHA", constants.DEFAULT_FLOW_ALPHA)
DEFAULT_FLOW_RETRIES = _int("SEPEVO_FLOW_RETRIES", constants.DEFAULT_FLOW_RETRIES)
DEFAULT_FM_PATIENCE = _int("SEPEVO_FM_PATIENCE", constants.DEFAULT_FM_PATIENCE)
DEFAULT_PAIRWISE_ROUNDS = _int("SEPEVO_PAIRWISE_ROUNDS", constants.DEFAULT_PAIRWISE_ROUNDS)
DEFAULT_INITIAL_ATTEMPTS = _int("SEPEVO_INITIAL_ATTEMPTS", constants.DEFAULT_INITIAL_ATTEMPTS)

# ==================== Coarsening ====================

DEFAULT_MIN_COARSEST = _int("SEPEVO_MIN_COARSEST", constants.DEFAULT_MIN_COARSEST)
DEFAULT_COARSEST_PER_BLOCK = _int("SEPEVO_COARSEST_PER_BLOCK", constants.DEFAULT_COARSEST_PER_BLOCK)
DEFAULT_RATING = os.getenv("SEPEVO_RATING", constants.RatingFunction.EXPANSION2.value)
if DEFAULT_RATING not in constants.RatingFunction.list():
    raise ValueError(f"❌ SEPEVO_RATING must be one of {constants.RatingFunction.list()}")

# ==================== Environment Info ====================

LOG_LEVEL = os.getenv("SEPEVO_LOG_LEVEL", "INFO").upper()
VIRTUAL_TICK = _float("SEPEVO_VIRTUAL_TICK", constants.DEFAULT_VIRTUAL_TICK)
if VIRTUAL_TICK <= 0:
    raise ValueError("❌ SEPEVO_VIRTUAL_TICK must be positive")

# ==================== Defaults Export ====================

__all__ = [
    "DEFAULT_IMBALANCE",
    "DEFAULT_FRACTION",
    "DEFAULT_MUTATION_PROB",
    "DEFAULT_FLOW_ALPHA",
    "DEFAULT_FLOW_RETRIES",
    "DEFAULT_FM_PATIENCE",
    "DEFAULT_PAIRWISE_ROUNDS",
    "DEFAULT_INITIAL_ATTEMPTS",
    "DEFAULT_MIN_COARSEST",
    "DEFAULT_COARSEST_PER_BLOCK",
    "DEFAULT_RATING",
    "LOG_LEVEL",
    "VIRTUAL_TICK",
]
