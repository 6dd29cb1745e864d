import json

import pytest

from pepin.dnf import generate_random
from pepin.errors import OracleInfeasibleError, ParameterError
from pepin.storage import read_formula, save_json, write_formula, write_jsonl
from pepin.verify import run_verify


def test_runs_are_merged_in_seed_order(three_cube):
    summary = run_verify(three_cube, runs=20, base_seed=100, jobs=4)
    assert summary.table["seed"].tolist() == list(range(100, 120))
    assert summary.exact == 10
    assert 0.0 <= summary.fraction_within <= 1.0
    assert summary.to_dict()["passed"] == summary.passed


def test_parallel_and_serial_runs_agree(three_cube):
    serial = run_verify(three_cube, runs=12, base_seed=3, jobs=1)
    threaded = run_verify(three_cube, runs=12, base_seed=3, jobs=3)
    assert serial.table["count"].tolist() == threaded.table["count"].tolist()


def test_backend_choice_does_not_change_counts(three_cube):
    dense = run_verify(three_cube, runs=8, backend="dense")
    sparse = run_verify(three_cube, runs=8, backend="sparse")
    assert dense.table["count"].tolist() == sparse.table["count"].tolist()


def test_run_count_must_be_positive(three_cube):
    with pytest.raises(ParameterError):
        run_verify(three_cube, runs=0)


def test_needs_a_feasible_exact_method():
    with pytest.raises(OracleInfeasibleError):
        run_verify(generate_random(40, 40, 3, seed=1), runs=1)


def test_formula_and_json_files(tmp_path, three_cube):
    path = tmp_path / "nested" / "f.dnf"
    write_formula(path, three_cube, ["three cubes"])
    assert read_formula(path) == three_cube
    save_json(tmp_path / "r.json", {"count": "10"})
    assert json.loads((tmp_path / "r.json").read_text()) == {"count": "10"}


def test_run_records_replace_previous_file(tmp_path, three_cube):
    records = tmp_path / "runs.jsonl"
    assert write_jsonl(records, [{"seed": 1}, {"seed": 2}]) == 2
    run_verify(three_cube, runs=3, base_seed=40, records_path=records)
    rows = [json.loads(line) for line in records.read_text().splitlines()]
    assert [r["seed"] for r in rows] == [40, 41, 42]
    assert all(set(r) >= {"count", "rel_error", "within"} for r in rows)
