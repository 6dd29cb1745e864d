import random

import pytest

from pepin.dnf import Cube, DnfFormula, Literal, generate_random, parse_dnf
from pepin.errors import OracleInfeasibleError, ParameterError
from pepin.oracle import choose_method, exact_brute, exact_count, exact_incexc


def test_three_cube_formula(three_cube):
    assert exact_brute(three_cube) == 10
    assert exact_incexc(three_cube) == 10
    assert exact_count(three_cube).count == 10


def test_complementary_units_cover_everything():
    formula = parse_dnf("p dnf 2 2\n1 0\n-1 0\n")
    assert exact_count(formula).count == 4


def test_wide_single_cube_uses_inclusion_exclusion():
    formula = parse_dnf("p dnf 200 1\n1 2 3 0\n")
    result = exact_count(formula)
    assert result.count == 2**197
    assert result.method == "inclusion_exclusion"


def test_disjoint_cubes_add():
    formula = parse_dnf("p dnf 6 3\n1 2 0\n3 4 0\n5 6 0\n")
    # 64 - 3^3 assignments falsify every cube
    assert exact_incexc(formula) == exact_brute(formula) == 64 - 27


def test_empty_formula():
    formula = parse_dnf("p dnf 4 0\n")
    assert exact_brute(formula) == exact_incexc(formula) == 0


def test_tautology_counts_everything():
    formula = parse_dnf("p dnf 5 2\n1 0\n0\n", allow_tautology=True)
    assert exact_brute(formula) == exact_incexc(formula) == 32


def test_methods_agree_on_random_formulas():
    rnd = random.Random(8)
    for seed in range(500):
        n = rnd.randint(1, 14)
        formula = generate_random(n, rnd.randint(1, 12), rnd.randint(1, n), seed=seed)
        assert exact_brute(formula) == exact_incexc(formula)


def test_inclusion_exclusion_scales_in_n():
    n = 100_000
    cubes = tuple(Cube((Literal(i + 1, True), Literal(i + 2, i % 2 == 0))) for i in range(0, 20, 2))
    formula = DnfFormula(n=n, cubes=cubes)
    # ten cubes over disjoint variable pairs, each falsified by 3 of 4 patterns
    assert exact_incexc(formula) == 2**n - 3**10 * 2**(n - 20)


def test_choose_method():
    assert choose_method(generate_random(25, 30, 3, seed=1)) == "brute"
    assert choose_method(generate_random(200, 5, 3, seed=1)) == "incexc"
    assert choose_method(generate_random(10, 20, 3, seed=1)) == "brute"
    with pytest.raises(OracleInfeasibleError, match="no feasible exact method"):
        choose_method(generate_random(40, 40, 3, seed=1))


def test_forced_methods_check_limits():
    with pytest.raises(OracleInfeasibleError):
        exact_count(generate_random(40, 3, 3, seed=1), "brute")
    with pytest.raises(OracleInfeasibleError):
        exact_count(generate_random(10, 30, 3, seed=1), "incexc")
    with pytest.raises(ParameterError):
        exact_count(generate_random(10, 3, 3, seed=1), "sampling")
