"""
Exact #DNF counters used as ground truth.

Two methods with complementary cost: brute force over all 2^n assignments
(vectorized in blocks) and inclusion-exclusion over the 2^m cube subsets.
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .config import BRUTE_CHUNK_BITS, BRUTE_MAX_VARS, INCEXC_MAX_CUBES
from .dnf import DnfFormula
from .errors import OracleInfeasibleError, ParameterError

logger = logging.getLogger(__name__)

METHODS = ("auto", "brute", "incexc")


@dataclass(frozen=True)
class ExactCount:
    count: int
    method: str


def _cube_masks(formula: DnfFormula) -> List[Tuple[int, int]]:
    """(positive mask, negative mask) per cube, variable v at bit v-1."""
    masks = []
    for cube in formula.cubes:
        pos = neg = 0
        for lit in cube.literals:
            if lit.positive:
                pos |= 1 << (lit.var - 1)
            else:
                neg |= 1 << (lit.var - 1)
        masks.append((pos, neg))
    return masks


def exact_brute(formula: DnfFormula) -> int:
    if formula.n > BRUTE_MAX_VARS:
        raise OracleInfeasibleError(f"brute force needs n <= {BRUTE_MAX_VARS}, got n={formula.n}")
    masks = [(np.int64(p), np.int64(q)) for p, q in _cube_masks(formula)]
    total = 1 << formula.n
    chunk = 1 << BRUTE_CHUNK_BITS
    satisfied = 0
    for start in range(0, total, chunk):
        x = np.arange(start, min(start + chunk, total), dtype=np.int64)
        hit = np.zeros(len(x), dtype=bool)
        for pos, neg in masks:
            hit |= ((x & pos) == pos) & ((x & neg) == 0)
        satisfied += int(np.count_nonzero(hit))
    return satisfied


def exact_incexc(formula: DnfFormula) -> int:
    """Sum over consistent cube subsets S of (-1)^(|S|+1) 2^(n - |vars(S)|)."""
    if formula.m > INCEXC_MAX_CUBES:
        raise OracleInfeasibleError(f"inclusion-exclusion needs m <= {INCEXC_MAX_CUBES}, got m={formula.m}")
    masks = _cube_masks(formula)
    n = formula.n
    total = 0
    # depth-first over subsets; an inconsistent subset has only inconsistent supersets
    stack = [(0, 0, 0, 0)]  # next cube index, pos, neg, subset size
    while stack:
        idx, pos, neg, size = stack.pop()
        for j in range(idx, len(masks)):
            p, q = pos | masks[j][0], neg | masks[j][1]
            if p & q:
                continue
            bound = (p | q).bit_count()
            term = 1 << (n - bound)
            total += term if size % 2 == 0 else -term
            stack.append((j + 1, p, q, size + 1))
    return total


def choose_method(formula: DnfFormula) -> str:
    """The cheaper feasible exact method, by 2^n * m against 2^m work."""
    options = []
    if formula.n <= BRUTE_MAX_VARS:
        options.append(((1 << formula.n) * max(formula.m, 1), "brute"))
    if formula.m <= INCEXC_MAX_CUBES:
        options.append((1 << formula.m, "incexc"))
    if not options:
        raise OracleInfeasibleError(
            f"no feasible exact method for n={formula.n}, m={formula.m} "
            f"(brute needs n <= {BRUTE_MAX_VARS}, inclusion-exclusion needs m <= {INCEXC_MAX_CUBES})")
    return min(options)[1]


def exact_count(formula: DnfFormula, method: str = "auto") -> ExactCount:
    if method not in METHODS:
        raise ParameterError(f"unknown method {method!r}, expected one of {METHODS}")
    if method == "auto":
        method = choose_method(formula)
        logger.debug(f"Exact count via {method} for n={formula.n}, m={formula.m}")
    if method == "brute":
        return ExactCount(exact_brute(formula), "brute")
    return ExactCount(exact_incexc(formula), "inclusion_exclusion")
