"""
Central configuration for the pepin approximate DNF counter.
All magic numbers and paths are centralized here.
"""
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import ParameterError

# =============================================================================
# Path Configuration
# =============================================================================
BASE_DIR = Path(__file__).resolve().parents[1]
REPORT_ASSETS_DIR = BASE_DIR / "report_assets"


# =============================================================================
# Counter Configuration
# =============================================================================
DEFAULT_EPSILON = 0.8
DEFAULT_DELTA = 0.36
DEFAULT_SEED = 1
SEED_ENV_VAR = "PEPIN_SEED"
SEED_MASK = (1 << 64) - 1

BACKENDS = ("dense", "sparse")
DEFAULT_BACKEND = "dense"

# p may not drop below 2^-(n + K_SLACK) except with negligible probability
K_SLACK = 64


@dataclass(frozen=True)
class CounterConfig:
    epsilon: float = DEFAULT_EPSILON
    delta: float = DEFAULT_DELTA
    seed: int = DEFAULT_SEED
    backend: str = DEFAULT_BACKEND
    allow_tautology: bool = False

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ParameterError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ParameterError(f"delta must lie in (0, 1), got {self.delta}")
        if self.backend not in BACKENDS:
            raise ParameterError(f"unknown backend {self.backend!r}, expected one of {BACKENDS}")
        object.__setattr__(self, "seed", int(self.seed) & SEED_MASK)


def resolve_seed(explicit: Optional[int] = None) -> int:
    """Explicit seed, else $PEPIN_SEED, else DEFAULT_SEED (reduced mod 2^64)."""
    if explicit is not None:
        return int(explicit) & SEED_MASK
    raw = os.environ.get(SEED_ENV_VAR, "").strip()
    if not raw:
        return DEFAULT_SEED
    try:
        return int(raw, 0) & SEED_MASK
    except ValueError:
        raise ParameterError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}")


# =============================================================================
# Randomness / Poisson Configuration
# =============================================================================
RNG_BUFFER_WORDS = 256  # 64-bit words pulled from the bit generator per refill

POISSON_BASE_PRECISION = 128  # fractional bits of the first CDF table
POISSON_EXTENSION_BITS = 64
POISSON_MAX_PRECISION = 256
POISSON_GUARD_BITS = 60  # uniform within 2^-60 of a boundary triggers extension
POISSON_TINY_EXPONENT = -64  # means 2^e with e <= this use the Bernoulli shortcut
POISSON_TINY_BITS = 64


# =============================================================================
# Oracle Configuration
# =============================================================================
BRUTE_MAX_VARS = 30
INCEXC_MAX_CUBES = 22
BRUTE_CHUNK_BITS = 20  # assignments enumerated per vectorized block: 2^20


# =============================================================================
# Verify / Benchmark Configuration
# =============================================================================
DEFAULT_VERIFY_RUNS = 200
DEFAULT_JOBS = 1


# =============================================================================
# Logging Configuration
# =============================================================================
LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
LOG_LEVEL = logging.INFO


def setup_logging(verbose: bool = False):
    """Configure logging for the application (stderr, so stdout stays parseable)."""
    logging.basicConfig(format=LOG_FORMAT, level=logging.DEBUG if verbose else LOG_LEVEL)


def lift_int_str_limit():
    """Exact counts can exceed the default int-to-str digit limit (Python 3.11+)."""
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
