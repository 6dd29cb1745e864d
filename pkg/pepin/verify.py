"""
Accuracy harness: repeated seeded runs of the counter against an exact count.
Seeds are base, base+1, ..., base+R-1; results are merged in seed order.
"""
import logging
import time
from dataclasses import dataclass
from typing import Dict, Optional

import pandas as pd
from joblib import Parallel, delayed

from .config import DEFAULT_BACKEND, DEFAULT_DELTA, DEFAULT_EPSILON, DEFAULT_JOBS, CounterConfig, lift_int_str_limit
from .counter import count
from .dnf import DnfFormula
from .errors import ParameterError
from .oracle import exact_count
from .storage import write_jsonl

logger = logging.getLogger(__name__)


@dataclass
class VerifySummary:
    exact: int
    exact_method: str
    runs: int
    epsilon: float
    delta: float
    base_seed: int
    mean_rel_error: float
    max_rel_error: float
    fraction_within: float
    elapsed_seconds: float
    table: pd.DataFrame

    @property
    def passed(self) -> bool:
        return self.fraction_within >= 1.0 - self.delta

    def to_dict(self) -> Dict:
        return {
            "exact": str(self.exact),
            "exact_method": self.exact_method,
            "runs": self.runs,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "base_seed": self.base_seed,
            "mean_rel_error": self.mean_rel_error,
            "max_rel_error": self.max_rel_error,
            "fraction_within": self.fraction_within,
            "passed": self.passed,
            "elapsed_seconds": round(self.elapsed_seconds, 4),
        }


def _one_run(formula: DnfFormula, config: CounterConfig, exact: int) -> Dict:
    result = count(formula, config)
    rel = result.relative_error(exact)
    return {
        "seed": config.seed,
        "count": str(result.count),
        "final_k": result.final_k,
        "final_size": result.final_size,
        "rel_error": rel,
        "within": rel <= config.epsilon,
        "elapsed_seconds": result.elapsed,
    }


def run_verify(
    formula: DnfFormula,
    runs: int,
    epsilon: float = DEFAULT_EPSILON,
    delta: float = DEFAULT_DELTA,
    base_seed: int = 1,
    backend: str = DEFAULT_BACKEND,
    jobs: int = DEFAULT_JOBS,
    allow_tautology: bool = False,
    records_path: Optional[str] = None,
) -> VerifySummary:
    """
    Run `runs` seeded counts and compare each against the exact count.

    Raises OracleInfeasibleError when no exact method fits the formula.
    """
    if runs < 1:
        raise ParameterError(f"runs must be >= 1, got {runs}")
    lift_int_str_limit()
    start = time.perf_counter()

    logger.info("=" * 60)
    logger.info(f"Verifying n={formula.n} m={formula.m}: {runs} runs, eps={epsilon}, delta={delta}")
    logger.info("=" * 60)

    exact = exact_count(formula)
    logger.info(f"Exact count ({exact.method}): {exact.count}")

    configs = [
        CounterConfig(epsilon=epsilon, delta=delta, seed=base_seed + i, backend=backend,
                      allow_tautology=allow_tautology)
        for i in range(runs)
    ]
    rows = Parallel(n_jobs=jobs, prefer="threads")(
        delayed(_one_run)(formula, cfg, exact.count) for cfg in configs
    )
    table = pd.DataFrame(rows)

    summary = VerifySummary(
        exact=exact.count,
        exact_method=exact.method,
        runs=runs,
        epsilon=epsilon,
        delta=delta,
        base_seed=base_seed,
        mean_rel_error=float(table["rel_error"].mean()),
        max_rel_error=float(table["rel_error"].max()),
        fraction_within=float(table["within"].mean()),
        elapsed_seconds=time.perf_counter() - start,
        table=table,
    )
    if records_path:
        write_jsonl(records_path, rows)

    logger.info("=" * 60)
    logger.info(f"Mean relative error: {summary.mean_rel_error:.4f}")
    logger.info(f"Max relative error: {summary.max_rel_error:.4f}")
    logger.info(f"Fraction within eps: {summary.fraction_within:.3f} (need >= {1 - delta:.3f})")
    logger.info(f"Total time: {summary.elapsed_seconds:.2f}s")
    logger.info("=" * 60)
    return summary
