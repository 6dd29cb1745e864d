"""
Command-line surface: count, exact, gen, verify.

Exit codes: 0 success, 1 input error, 2 parameter error, 3 internal
invariant violation.
"""
import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

from .config import (
    BACKENDS,
    DEFAULT_BACKEND,
    DEFAULT_DELTA,
    DEFAULT_EPSILON,
    DEFAULT_JOBS,
    DEFAULT_VERIFY_RUNS,
    CounterConfig,
    lift_int_str_limit,
    resolve_seed,
    setup_logging,
)
from .counter import CountEstimate, count
from .dnf import generate_random, serialize
from .errors import DnfParseError, OracleInfeasibleError, ParameterError, PepinError
from .oracle import METHODS, exact_count
from .storage import read_formula, write_formula
from .verify import run_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PARAM = 2
EXIT_INTERNAL = 3


@dataclass
class RunReport:
    file: str
    n: int
    m: int
    epsilon: float
    delta: float
    thresh: int
    seed: int
    count: str
    final_k: int
    final_size: int
    elapsed_seconds: float
    backend: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def cmd_count(args) -> int:
    config = CounterConfig(
        epsilon=args.epsilon,
        delta=args.delta,
        seed=resolve_seed(args.seed),
        backend=args.backend,
        allow_tautology=args.allow_tautology,
    )
    formula = read_formula(args.file, allow_tautology=args.allow_tautology)
    result: CountEstimate = count(formula, config)
    report = RunReport(
        file=str(args.file),
        n=formula.n,
        m=formula.m,
        epsilon=config.epsilon,
        delta=config.delta,
        thresh=result.thresh,
        seed=config.seed,
        count=str(result.count),
        final_k=result.final_k,
        final_size=result.final_size,
        elapsed_seconds=round(result.elapsed, 6),
        backend=config.backend,
    )
    if args.json:
        print(report.to_json())
    else:
        print(f"count: {report.count}")
        print(f"approx: {result.approx()}")
        print(f"Thresh={report.thresh} k={report.final_k} |X|={report.final_size} "
              f"seed={report.seed} time={result.elapsed:.3f}s")
    return EXIT_OK


def cmd_exact(args) -> int:
    formula = read_formula(args.file, allow_tautology=args.allow_tautology)
    result = exact_count(formula, args.method)
    print(result.count)
    logger.info(f"Exact count via {result.method}")
    return EXIT_OK


def cmd_gen(args) -> int:
    formula = generate_random(args.vars, args.cubes, args.width, resolve_seed(args.seed))
    comments = [f"generated n={args.vars} m={args.cubes} width={args.width} seed={resolve_seed(args.seed)}"]
    if args.output:
        write_formula(args.output, formula, comments)
    else:
        sys.stdout.write(serialize(formula, comments).decode("ascii"))
    return EXIT_OK


def cmd_verify(args) -> int:
    formula = read_formula(args.file, allow_tautology=args.allow_tautology)
    summary = run_verify(
        formula,
        runs=args.runs,
        epsilon=args.epsilon,
        delta=args.delta,
        base_seed=resolve_seed(args.seeds),
        backend=args.backend,
        jobs=args.jobs,
        allow_tautology=args.allow_tautology,
        records_path=args.records,
    )
    if args.json:
        print(json.dumps(summary.to_dict(), indent=2))
    else:
        print(f"exact: {summary.exact} ({summary.exact_method})")
        print(f"runs: {summary.runs} (seeds {summary.base_seed}..{summary.base_seed + summary.runs - 1})")
        print(f"mean relative error: {summary.mean_rel_error:.4f}")
        print(f"max relative error: {summary.max_rel_error:.4f}")
        print(f"fraction within eps={summary.epsilon}: {summary.fraction_within:.3f}")
        print("PASS" if summary.passed else "FAIL")
    return EXIT_OK if summary.passed else EXIT_INPUT


def _add_counter_args(p: argparse.ArgumentParser):
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="Tolerance (0, 1)")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="Confidence (0, 1)")
    p.add_argument("--backend", choices=BACKENDS, default=DEFAULT_BACKEND, help="Sample store backend")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pepin", description="Approximate and exact #DNF counting")
    ap.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="Approximate count of a DNF file")
    p.add_argument("file")
    _add_counter_args(p)
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $PEPIN_SEED or 1)")
    p.add_argument("--json", action="store_true", help="Print the full JSON run report")
    p.add_argument("--allow-tautology", action="store_true", help="Accept empty cubes (count is 2^n)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("exact", help="Exact count of a small DNF file")
    p.add_argument("file")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--allow-tautology", action="store_true")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("gen", help="Generate a random DNF benchmark")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--cubes", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", default=None, help="Output file (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="Accuracy of repeated seeded counts against the exact count")
    p.add_argument("file")
    _add_counter_args(p)
    p.add_argument("--runs", type=int, default=DEFAULT_VERIFY_RUNS)
    p.add_argument("--seeds", type=int, default=None, help="Base seed; runs use base..base+R-1")
    p.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Worker threads")
    p.add_argument("--records", default=None, help="Write per-run records as JSONL")
    p.add_argument("--json", action="store_true")
    p.add_argument("--allow-tautology", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    lift_int_str_limit()
    try:
        return args.func(args)
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    except (DnfParseError, OracleInfeasibleError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (PepinError, AssertionError) as e:
        logger.exception("Internal invariant violated")
        print(f"error: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
