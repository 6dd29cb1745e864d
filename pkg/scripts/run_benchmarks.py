"""
Desk-scale benchmark run for the pepin counter.

Generates a grid of random width-uniform DNF instances, counts each with
both sample-store backends (timing comparison) and, where an exact method
is feasible, measures accuracy over repeated seeded runs.

Usage:
    python scripts/run_benchmarks.py [--runs 50] [--jobs 4] [--quick]
"""
import argparse
import sys
import time
from pathlib import Path

import pandas as pd

# Add project root to path
BASE_DIR = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(BASE_DIR))

from pepin.config import DEFAULT_DELTA, DEFAULT_EPSILON, REPORT_ASSETS_DIR, BACKENDS, CounterConfig  # noqa: E402
from pepin.counter import count  # noqa: E402
from pepin.dnf import generate_random  # noqa: E402
from pepin.errors import OracleInfeasibleError  # noqa: E402
from pepin.oracle import choose_method  # noqa: E402
from pepin.storage import save_json  # noqa: E402
from pepin.verify import run_verify  # noqa: E402

WIDTHS = (3, 13, 43)
TIMING_GRID = [(n, m) for n in (100, 1000, 10_000) for m in (300, 1000, 3000)]
QUICK_TIMING_GRID = [(100, 300), (1000, 300)]
# m <= 22 keeps inclusion-exclusion feasible for every width
ACCURACY_GRID = [(n, 20) for n in (50, 100)] + [(20, 200)]


def time_backends(grid, seed=1):
    """Count every grid instance with each backend; same seed, so same estimate."""
    rows = []
    print("\n" + "=" * 70)
    print("BACKEND TIMING (dense vs sparse)")
    print("=" * 70)
    for n, m in grid:
        for width in WIDTHS:
            if width > n:
                continue
            formula = generate_random(n, m, width, seed)
            row = {"n": n, "m": m, "width": width}
            estimates = set()
            for backend in BACKENDS:
                start = time.perf_counter()
                result = count(formula, CounterConfig(seed=seed, backend=backend))
                row[f"{backend}_seconds"] = round(time.perf_counter() - start, 4)
                estimates.add(result.count)
                row["final_k"] = result.final_k
                row["final_size"] = result.final_size
            row["estimate"] = result.approx()
            row["backends_agree"] = len(estimates) == 1
            rows.append(row)
            print(f"n={n:<6} m={m:<5} w={width:<3} | dense {row['dense_seconds']:7.3f}s | "
                  f"sparse {row['sparse_seconds']:7.3f}s | {row['estimate']}")
    print("-" * 70)
    return rows


def measure_accuracy(grid, runs, jobs, seed=1):
    """Relative error against the exact count over `runs` seeded runs per instance."""
    rows = []
    print("\n" + "=" * 70)
    print(f"ACCURACY AGAINST EXACT COUNT ({runs} runs per instance)")
    print("=" * 70)
    for n, m in grid:
        for width in WIDTHS:
            if width > n:
                continue
            formula = generate_random(n, m, width, seed)
            try:
                method = choose_method(formula)
            except OracleInfeasibleError as e:
                print(f"⚠ Skipping n={n} m={m} w={width}: {e}")
                continue
            summary = run_verify(formula, runs=runs, base_seed=seed, jobs=jobs)
            rows.append({
                "n": n,
                "m": m,
                "width": width,
                "exact_method": method,
                "mean_rel_error": round(summary.mean_rel_error, 4),
                "max_rel_error": round(summary.max_rel_error, 4),
                "fraction_within": round(summary.fraction_within, 3),
                "passed": summary.passed,
            })
            print(f"n={n:<6} m={m:<5} w={width:<3} | mean err {summary.mean_rel_error:.4f} | "
                  f"within eps {summary.fraction_within:.3f} | {'PASS' if summary.passed else 'FAIL'}")
    print("-" * 70)
    return rows


def save_results(timing_rows, accuracy_rows, runs):
    timing = pd.DataFrame(timing_rows)
    accuracy = pd.DataFrame(accuracy_rows)
    overall_error = float(accuracy["mean_rel_error"].mean()) if len(accuracy) else None

    json_path = REPORT_ASSETS_DIR / "benchmark_results.json"
    save_json(json_path, {
        "epsilon": DEFAULT_EPSILON,
        "delta": DEFAULT_DELTA,
        "runs_per_instance": runs,
        "timing": timing_rows,
        "accuracy": accuracy_rows,
        "mean_relative_error": overall_error,
    })
    print(f"✓ Saved: {json_path}")

    txt_path = REPORT_ASSETS_DIR / "benchmark_results.txt"
    with open(txt_path, "w", encoding="utf-8") as f:
        f.write("PEPIN BENCHMARK RESULTS\n")
        f.write("=" * 80 + "\n\n")
        f.write(f"epsilon={DEFAULT_EPSILON}, delta={DEFAULT_DELTA}, widths {WIDTHS}\n\n")
        f.write("BACKEND TIMING\n")
        f.write("-" * 80 + "\n")
        f.write(timing.to_string(index=False) + "\n\n")
        f.write("ACCURACY\n")
        f.write("-" * 80 + "\n")
        f.write((accuracy.to_string(index=False) if len(accuracy) else "(none)") + "\n\n")
        if overall_error is not None:
            f.write(f"Mean relative error over all instances: {overall_error:.4f}\n")
    print(f"✓ Saved: {txt_path}")
    return overall_error


def main():
    ap = argparse.ArgumentParser(description="Run the pepin benchmark grid")
    ap.add_argument("--runs", type=int, default=50, help="Seeded runs per accuracy instance")
    ap.add_argument("--jobs", type=int, default=1, help="Worker threads for accuracy runs")
    ap.add_argument("--quick", action="store_true", help="Small timing grid only")
    args = ap.parse_args()

    REPORT_ASSETS_DIR.mkdir(parents=True, exist_ok=True)
    print("\n" + "=" * 70)
    print("PEPIN BENCHMARKS")
    print("=" * 70)
    print(f"Output directory: {REPORT_ASSETS_DIR}")

    timing_rows = time_backends(QUICK_TIMING_GRID if args.quick else TIMING_GRID)
    accuracy_rows = measure_accuracy(ACCURACY_GRID, args.runs, args.jobs)
    overall_error = save_results(timing_rows, accuracy_rows, args.runs)

    print("\n" + "=" * 70)
    print("BENCHMARKS COMPLETE")
    print("=" * 70)
    if overall_error is not None:
        print(f"Mean relative error: {overall_error:.4f}")
    if not all(r["backends_agree"] for r in timing_rows):
        print("⚠ Backends disagreed on at least one instance")
        sys.exit(1)


if __name__ == "__main__":
    main()
