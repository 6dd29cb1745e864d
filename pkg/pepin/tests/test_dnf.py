import pytest
from hypothesis import given, settings, strategies as st

from pepin.dnf import Cube, DnfFormula, Literal, generate_random, normalize, parse_dnf, serialize
from pepin.errors import DnfParseError, ParameterError


def cube(*lits):
    return Cube(tuple(Literal.from_int(x) for x in lits))


@st.composite
def raw_formulas(draw, max_n=12, max_m=10, max_width=6):
    n = draw(st.integers(1, max_n))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    cubes = draw(st.lists(st.lists(lit, min_size=1, max_size=max_width), max_size=max_m))
    return n, cubes


def test_parse_single_cube():
    f = parse_dnf("p dnf 3 1\n1 2 0\n")
    assert f.n == 3 and f.m == 1
    assert f.cubes[0] == cube(1, 2)
    assert f.cubes[0].width == 2


def test_parse_complementary_units():
    f = parse_dnf(b"p dnf 2 2\n1 0\n-1 0\n")
    assert f.cubes == (cube(1), cube(-1))
    assert all(c.width == 1 for c in f.cubes)


def test_parse_rejects_variable_beyond_n():
    with pytest.raises(DnfParseError, match="exceeds"):
        parse_dnf("p dnf 3 1\n4 0\n")


@pytest.mark.parametrize("text", [
    "p cnf 3 1\n1 0\n",
    "p dnf 3\n1 0\n",
    "p dnf three 1\n1 0\n",
    "1 2 0\n",
    "p dnf 3 2\n1 0\n",
    "p dnf 3 1\n1 0\n2 0\n",
    "p dnf 3 1\n1 2\n",
    "p dnf 3 1\n1 x 0\n",
    "p dnf 3 1\np dnf 3 1\n1 0\n",
])
def test_parse_errors(text):
    with pytest.raises(DnfParseError):
        parse_dnf(text)


def test_empty_cube_needs_tautology_flag():
    with pytest.raises(DnfParseError, match="empty cube"):
        parse_dnf("p dnf 3 1\n0\n")
    f = parse_dnf("p dnf 3 1\n0\n", allow_tautology=True)
    assert f.has_tautology
    assert f.cubes[0].width == 0


def test_comments_crlf_and_split_cubes():
    f = parse_dnf("c a comment\r\np dnf 4 2\r\nc another\r\n1 -2\r\n 0 3\t0\r\n")
    assert f.cubes == (cube(1, -2), cube(3))


def test_parse_drops_contradictions_and_keeps_order():
    f = parse_dnf("p dnf 3 3\n2 1 0\n1 -1 0\n3 0\n")
    assert f.cubes == (cube(1, 2), cube(3))
    assert f.dropped_contradictions == 1


def test_normalize_examples():
    assert normalize([[1, 1, 2]], 3) == ([cube(1, 2)], 0)
    assert normalize([[1, -1]], 2) == ([], 1)
    assert normalize([[1, 2], [1, -1], [3]], 3) == ([cube(1, 2), cube(3)], 1)


@given(raw_formulas())
def test_normalize_is_idempotent(raw):
    n, cubes = raw
    once, _ = normalize(cubes, n)
    twice, dropped = normalize([c.to_ints() for c in once], n)
    assert twice == once
    assert dropped == 0


def test_serialize_single_cube():
    assert serialize(parse_dnf("p dnf 3 1\n1 2 0\n")) == b"p dnf 3 1\n1 2 0\n"


def test_serialize_comment_lines_are_ignored_by_parser():
    f = parse_dnf("p dnf 3 1\n1 2 0\n")
    assert parse_dnf(serialize(f, comments=["made by a test"])) == f


@given(raw_formulas())
def test_parse_serialize_round_trip(raw):
    n, cubes = raw
    f = DnfFormula(n=n, cubes=tuple(normalize(cubes, n)[0]))
    assert parse_dnf(serialize(f)) == f


def test_generate_random_shape():
    f = generate_random(10, 5, 3, seed=7)
    assert f.n == 10 and f.m == 5
    for c in f.cubes:
        assert c.width == 3
        assert len({lit.var for lit in c.literals}) == 3
        assert all(1 <= lit.var <= 10 for lit in c.literals)


def test_generate_random_is_deterministic():
    assert serialize(generate_random(10, 5, 3, seed=7)) == serialize(generate_random(10, 5, 3, seed=7))
    assert generate_random(10, 5, 3, seed=7) != generate_random(10, 5, 3, seed=8)


def test_generate_random_low_end_of_benchmark_grid():
    f = generate_random(100, 300, 3, seed=1)
    assert serialize(f).startswith(b"p dnf 100 300\n")
    assert parse_dnf(serialize(f)) == f


def test_generate_random_rejects_bad_width():
    with pytest.raises(ParameterError):
        generate_random(3, 2, 4, seed=1)
    with pytest.raises(ParameterError):
        generate_random(3, 0, 2, seed=1)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 40), st.integers(1, 30), st.integers(0, 2**64 - 1), st.data())
def test_generated_formulas_round_trip(n, m, seed, data):
    width = data.draw(st.integers(1, n))
    f = generate_random(n, m, width, seed)
    assert parse_dnf(serialize(f)) == f
