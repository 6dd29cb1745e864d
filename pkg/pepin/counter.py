"""
The pepin approximate DNF counter.

Single pass over the cubes. X holds lazy samples of the solutions seen so
far, each solution present Poisson(p)-many times; for every cube the
samples it covers are removed, p is lowered until the cube's Poisson mean
t*p drops below Thresh, N ~ Poisson(t*p) fresh samples of the cube are
added, and p keeps halving (thinning X, redrawing N) while N + |X| would
overflow Thresh. The output |X| / p is exact because p = 2^-k.

Random bits per cube, in order: scan-pass materialization, pre-halving
thinning, the Poisson draw, then overflow rounds (thinning, redraw).
"""
import logging
import math
import time
from dataclasses import dataclass
from typing import Optional

from .arith import DyadicProb, RandomSource, estimate, mean_exceeds, poisson_pow2
from .config import K_SLACK, CounterConfig
from .dnf import Cube, DnfFormula
from .errors import CounterInvariantError, ParameterError
from .store import SampleStore, new_store

logger = logging.getLogger(__name__)

LOG10_2 = math.log10(2)


def compute_thresh(epsilon: float, delta: float, m: int) -> int:
    """ceil(max(12 ln(24/delta) / eps^2, 6 (ln(6/delta) + ln m)))."""
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    accuracy = 12.0 * math.log(24.0 / delta) / epsilon ** 2
    overflow = 6.0 * (math.log(6.0 / delta) + math.log(m))
    return math.ceil(max(accuracy, overflow))


@dataclass
class CounterState:
    n: int
    thresh: int
    store: SampleStore
    rng: RandomSource
    p: DyadicProb = DyadicProb()
    cubes_processed: int = 0

    @property
    def k(self) -> int:
        return self.p.k

    @property
    def k_cap(self) -> int:
        return self.n + K_SLACK


@dataclass(frozen=True)
class CountEstimate:
    count: int
    final_k: int
    final_size: int
    thresh: int
    seed: int
    elapsed: float = 0.0

    def relative_error(self, exact: int) -> float:
        if exact == 0:
            return 0.0 if self.count == 0 else math.inf
        return abs(self.count - exact) / exact

    def approx(self) -> str:
        """
        Scientific rendering of the exact count, e.g. '2.008 x 10^59'.

        Leading digits come from integer division, so counts beyond the
        interpreter's int-to-str digit limit render too.
        """
        if self.count < 10_000:
            return str(self.count)
        # floor(log10(count)) is this or one less
        exp10 = int(self.count.bit_length() * LOG10_2)
        lead = self.count // 10 ** (exp10 - 3)
        while lead >= 10_000:
            exp10 += 1
            lead = self.count // 10 ** (exp10 - 3)
        while lead < 1_000:
            exp10 -= 1
            lead = self.count // 10 ** (exp10 - 3)
        return f"{lead // 1000}.{lead % 1000:03d} x 10^{exp10}"


def _halve(state: CounterState):
    state.store.thin_half(state.rng)
    state.p = state.p.halve()
    if state.k > state.k_cap:
        raise CounterInvariantError(f"sampling exponent k={state.k} exceeded cap n+{K_SLACK}={state.k_cap}")
    logger.debug(f"cube {state.cubes_processed + 1}: p halved to 2^-{state.k}, |X|={state.store.size}")


def generate_samples(state: CounterState, cube: Cube, count: int):
    """Append `count` lazy samples of the cube; consumes no random bits."""
    if count + state.store.size > state.thresh:
        raise CounterInvariantError(f"{count} samples would overflow Thresh={state.thresh} (|X|={state.store.size})")
    for _ in range(count):
        state.store.append_lazy(cube)


def process_cube(state: CounterState, cube: Cube):
    store, rng = state.store, state.rng
    store.scan_remove_satisfying(cube, rng)

    t_exp = cube.solution_exp(state.n)
    while mean_exceeds(t_exp, state.k, state.thresh):
        _halve(state)

    draw = poisson_pow2(t_exp - state.k, rng)
    while draw + store.size > state.thresh:
        _halve(state)
        draw = poisson_pow2(t_exp - state.k, rng)

    generate_samples(state, cube, draw)
    state.cubes_processed += 1


def new_state(formula: DnfFormula, config: CounterConfig, initial_k: int = 0) -> CounterState:
    thresh = compute_thresh(config.epsilon, config.delta, max(formula.m, 1))
    return CounterState(
        n=formula.n,
        thresh=thresh,
        store=new_store(thresh, max(formula.n, 1), config.backend),
        rng=RandomSource(config.seed),
        p=DyadicProb(initial_k),
    )


def count(formula: DnfFormula, config: Optional[CounterConfig] = None, initial_k: int = 0) -> CountEstimate:
    """
    Estimate the number of satisfying assignments of `formula`.

    Within (1 +- epsilon) of the true count with probability >= 1 - delta.
    `initial_k` pins the starting exponent; only distribution tests use it.
    """
    config = config or CounterConfig()
    if initial_k < 0:
        raise ParameterError(f"initial_k must be non-negative, got {initial_k}")
    start = time.perf_counter()
    thresh = compute_thresh(config.epsilon, config.delta, max(formula.m, 1))

    if formula.m == 0:
        logger.info("Formula has no satisfiable cubes; count is 0")
        return CountEstimate(0, 0, 0, thresh, config.seed, time.perf_counter() - start)

    if formula.has_tautology:
        if not config.allow_tautology:
            raise ParameterError("formula contains an empty cube; enable allow_tautology to count it")
        logger.info(f"Formula contains an empty cube; count is 2^{formula.n}")
        return CountEstimate(estimate(1, formula.n), formula.n, 1, thresh, config.seed,
                             time.perf_counter() - start)

    state = new_state(formula, config, initial_k)
    logger.info(f"Counting n={formula.n} m={formula.m} Thresh={state.thresh} "
                f"seed={config.seed} backend={config.backend}")
    for cube in formula.cubes:
        process_cube(state, cube)

    size = state.store.size
    result = CountEstimate(
        count=estimate(size, state.k),
        final_k=state.k,
        final_size=size,
        thresh=state.thresh,
        seed=config.seed,
        elapsed=time.perf_counter() - start,
    )
    logger.info(f"Estimate {result.approx()} (|X|={size}, k={state.k}) in {result.elapsed:.3f}s")
    return result
