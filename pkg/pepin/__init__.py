"""
pepin: approximate #DNF counting with lazy Poisson sampling.

Library entry point is `count(formula, config)`; everything else is reached
through `python -m pepin`.
"""
from .config import CounterConfig
from .counter import CountEstimate, compute_thresh, count
from .dnf import Cube, DnfFormula, Literal, generate_random, normalize, parse_dnf, serialize
from .oracle import ExactCount, exact_brute, exact_count, exact_incexc

__all__ = [
    "CounterConfig",
    "CountEstimate",
    "Cube",
    "DnfFormula",
    "ExactCount",
    "Literal",
    "compute_thresh",
    "count",
    "exact_brute",
    "exact_count",
    "exact_incexc",
    "generate_random",
    "normalize",
    "parse_dnf",
    "serialize",
]
