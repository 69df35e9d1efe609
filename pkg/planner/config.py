"""Configuration for the eager timeline planner."""

import os
import warnings
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    """Read a positive integer from the environment, warning on junk values."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        warnings.warn(f"{name}={raw!r} is not an integer; using {default}", UserWarning)
        return default
    if value <= 0:
        warnings.warn(f"{name}={raw!r} must be positive; using {default}", UserWarning)
        return default
    return value


# ============================================================================
# Search Budgets
# ============================================================================

# Maximum number of distinct product states the solver may materialize
DEFAULT_MAX_STATES = _int_env("PLANNER_MAX_STATES", 200_000)

# Maximum length of a witness word (equals the plan horizon)
DEFAULT_MAX_LEN = _int_env("PLANNER_MAX_LEN", 64)

# Default enumeration depth for language smoke checks
SMOKE_MAX_LEN = _int_env("PLANNER_SMOKE_MAX_LEN", 6)

# Largest n accepted by the lower-bound experiment
LOWERBOUND_MAX_N = _int_env("PLANNER_LOWERBOUND_MAX_N", 5)

# ============================================================================
# Automata
# ============================================================================

# Entries kept per automaton transition cache (LRU eviction beyond this)
TRANSITION_CACHE_SIZE = _int_env("PLANNER_TRANSITION_CACHE_SIZE", 50_000)

# ============================================================================
# Logging
# ============================================================================

LOG_LEVEL = os.getenv("PLANNER_LOG_LEVEL", "WARNING").upper()

# ============================================================================
# Feature Flags
# ============================================================================

FEATURE_FLAGS = {
    "dot_hide_sink": os.getenv("FEATURE_DOT_HIDE_SINK", "true").lower() == "true",
}
