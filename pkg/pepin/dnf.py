"""
DNF formula model: literals, cubes, formulas.
Parsing and serialization of the `p dnf <n> <m>` text format, normalization,
and the seeded random benchmark generator.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

import numpy as np

from .errors import DnfParseError, ParameterError

logger = logging.getLogger(__name__)


class Literal(NamedTuple):
    var: int  # 1-based
    positive: bool

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        return cls(abs(lit), lit > 0)

    def to_int(self) -> int:
        return self.var if self.positive else -self.var


@dataclass(frozen=True)
class Cube:
    """Conjunction of literals, sorted by variable with no repeated variable."""
    literals: Tuple[Literal, ...]

    @property
    def width(self) -> int:
        return len(self.literals)

    def solution_exp(self, n: int) -> int:
        """log2 of the cube's solution count over n variables."""
        return n - self.width

    @cached_property
    def var_index(self) -> np.ndarray:
        """0-based variable indices, ascending."""
        return np.fromiter((lit.var - 1 for lit in self.literals), dtype=np.intp, count=self.width)

    @cached_property
    def values(self) -> np.ndarray:
        """Required cell value per literal (1 = TRUE, 0 = FALSE)."""
        return np.fromiter((lit.positive for lit in self.literals), dtype=np.uint8, count=self.width)

    def to_ints(self) -> List[int]:
        return [lit.to_int() for lit in self.literals]


@dataclass(frozen=True)
class DnfFormula:
    n: int
    cubes: Tuple[Cube, ...]
    dropped_contradictions: int = field(default=0, compare=False)

    @property
    def m(self) -> int:
        return len(self.cubes)

    @property
    def has_tautology(self) -> bool:
        return any(c.width == 0 for c in self.cubes)


RawCube = Sequence[int]


def normalize(cubes: Iterable[RawCube], n: int) -> Tuple[List[Cube], int]:
    """
    Deduplicate literals and drop contradictory cubes.

    Returns (cubes, dropped). Literals of a retained cube are sorted by
    variable index; cube order is preserved.
    """
    out: List[Cube] = []
    dropped = 0
    for raw in cubes:
        polarity = {}
        contradictory = False
        for lit in raw:
            lit = lit.to_int() if isinstance(lit, Literal) else int(lit)
            var, positive = abs(lit), lit > 0
            if polarity.setdefault(var, positive) != positive:
                contradictory = True
                break
        if contradictory:
            dropped += 1
            continue
        out.append(Cube(tuple(Literal(v, polarity[v]) for v in sorted(polarity))))
    return out, dropped


def _parse_header(tokens: List[str], lineno: int) -> Tuple[int, int]:
    if len(tokens) != 4 or tokens[0] != "p" or tokens[1] != "dnf":
        raise DnfParseError(f"line {lineno}: malformed header {' '.join(tokens)!r}, expected 'p dnf <n> <m>'")
    try:
        n, m = int(tokens[2]), int(tokens[3])
    except ValueError:
        raise DnfParseError(f"line {lineno}: header counts must be integers")
    if n < 0 or m < 0:
        raise DnfParseError(f"line {lineno}: header counts must be non-negative")
    return n, m


def parse_dnf(text: Union[str, bytes], allow_tautology: bool = False) -> DnfFormula:
    """
    Parse the `p dnf <n> <m>` format into a normalized formula.

    Cubes are whitespace-separated nonzero integers terminated by 0 and may
    span lines; lines starting with 'c' are comments.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError:
            raise DnfParseError("input is not ASCII")

    header = None
    raw_cubes: List[List[int]] = []
    current: List[int] = []
    lineno = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("c"):
            continue
        if tokens[0] == "p":
            if header is not None:
                raise DnfParseError(f"line {lineno}: duplicate header")
            header = _parse_header(tokens, lineno)
            continue
        if header is None:
            raise DnfParseError(f"line {lineno}: cube before 'p dnf' header")
        n = header[0]
        for tok in tokens:
            try:
                lit = int(tok)
            except ValueError:
                raise DnfParseError(f"line {lineno}: bad token {tok!r}")
            if lit == 0:
                if not current and not allow_tautology:
                    raise DnfParseError(f"line {lineno}: empty cube (pass --allow-tautology to accept it)")
                raw_cubes.append(current)
                current = []
            elif abs(lit) > n:
                raise DnfParseError(f"line {lineno}: variable {abs(lit)} exceeds n={n}")
            else:
                current.append(lit)

    if header is None:
        raise DnfParseError("missing 'p dnf <n> <m>' header")
    if current:
        raise DnfParseError(f"line {lineno}: last cube is not terminated by 0")
    n, m = header
    if len(raw_cubes) != m:
        raise DnfParseError(f"header declares {m} cubes but {len(raw_cubes)} were found")

    cubes, dropped = normalize(raw_cubes, n)
    if dropped:
        logger.warning(f"Dropped {dropped} contradictory cube(s)")
    return DnfFormula(n=n, cubes=tuple(cubes), dropped_contradictions=dropped)


def serialize(formula: DnfFormula, comments: Sequence[str] = ()) -> bytes:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p dnf {formula.n} {formula.m}")
    for cube in formula.cubes:
        lines.append(" ".join(str(x) for x in cube.to_ints() + [0]))
    return ("\n".join(lines) + "\n").encode("ascii")


def generate_random(n: int, m: int, width: int, seed: int) -> DnfFormula:
    """
    Random width-uniform DNF: each cube picks `width` distinct variables
    uniformly and an independent fair polarity per literal.
    """
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    if not 1 <= width <= n:
        raise ParameterError(f"width must lie in [1, n={n}], got {width}")
    rng = np.random.Generator(np.random.Philox(key=int(seed) & ((1 << 64) - 1)))
    raw = []
    for _ in range(m):
        variables = rng.choice(n, size=width, replace=False) + 1
        signs = rng.integers(0, 2, size=width)
        raw.append([int(v) if s else -int(v) for v, s in zip(variables, signs)])
    cubes, _ = normalize(raw, n)
    return DnfFormula(n=n, cubes=tuple(cubes))
