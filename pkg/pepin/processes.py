"""
The three equivalent Poisson sampling processes behind the counter.

Each samples a multiset T from a ground set S = {0, ..., 2^s - 1} with
inclusion parameter p = 2^-k, and returns T as a Counter of element -> copies.
All three produce the same distribution; the counter relies on that to
replace "each solution kept with probability p" by a single Poisson draw
followed by draws with replacement.
"""
from collections import Counter

from .arith import RandomSource, poisson_pow2


def _draw_element(s: int, rng: RandomSource) -> int:
    return rng.next_uniform_bits(s)


def process_one(s: int, k: int, rng: RandomSource) -> Counter:
    """N ~ Poisson(|S| p / 2), then N draws from S with replacement."""
    copies = Counter()
    for _ in range(poisson_pow2(s - k - 1, rng)):
        copies[_draw_element(s, rng)] += 1
    return copies


def process_two(s: int, k: int, rng: RandomSource) -> Counter:
    """N ~ Poisson(|S| p), N draws with replacement, each kept with prob. 1/2."""
    copies = Counter()
    for _ in range(poisson_pow2(s - k, rng)):
        element = _draw_element(s, rng)
        if rng.next_bit() == 0:
            copies[element] += 1
    return copies


def process_three(s: int, k: int, rng: RandomSource) -> Counter:
    """Every element independently gets Poisson(p / 2) copies."""
    copies = Counter()
    for element in range(1 << s):
        count = poisson_pow2(-k - 1, rng)
        if count:
            copies[element] = count
    return copies
