"""
Exact arithmetic and randomness for the counter.

The sampling probability is always 2^-k, so it is tracked as the exponent k.
Poisson means are t * p = 2^(n - w - k), so the Poisson sampler only ever
needs dyadic means and draws them by exact inverse-CDF lookup.

Bit-consumption contract of RandomSource:
  * the bit generator is numpy's Philox keyed directly with the 64-bit seed;
  * raw 64-bit outputs are consumed least-significant bit first;
  * next_uniform_bits(b) takes the next b stream bits, first bit = MSB.
"""
import bisect
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List

import mpmath
import numpy as np

from .config import (
    POISSON_BASE_PRECISION,
    POISSON_EXTENSION_BITS,
    POISSON_GUARD_BITS,
    POISSON_MAX_PRECISION,
    POISSON_TINY_BITS,
    POISSON_TINY_EXPONENT,
    RNG_BUFFER_WORDS,
    SEED_MASK,
)

logger = logging.getLogger(__name__)

# mpmath precision is process-global state
_MP_LOCK = threading.Lock()


@dataclass(frozen=True)
class DyadicProb:
    """p = 2^-k."""
    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"exponent must be non-negative, got {self.k}")

    def halve(self) -> "DyadicProb":
        return DyadicProb(self.k + 1)

    def probability(self) -> Fraction:
        return Fraction(1, 1 << self.k)


class RandomSource:
    """Seeded bit stream. Single owner; not thread-safe."""

    def __init__(self, seed: int, buffer_words: int = RNG_BUFFER_WORDS):
        self.seed = int(seed) & SEED_MASK
        self._bitgen = np.random.Philox(key=self.seed)
        self._buffer_words = buffer_words
        self._bits = np.empty(0, dtype=np.uint8)
        self._pos = 0
        self.consumed = 0

    def _refill(self, need: int):
        words = max(self._buffer_words, (need + 63) // 64)
        raw = self._bitgen.random_raw(size=words).astype("<u8", copy=False)
        fresh = np.unpackbits(raw.view(np.uint8), bitorder="little")
        self._bits = np.concatenate((self._bits[self._pos:], fresh))
        self._pos = 0

    def bits(self, count: int) -> np.ndarray:
        """The next `count` bits as a uint8 array, in stream order."""
        if count <= 0:
            return np.empty(0, dtype=np.uint8)
        if self._pos + count > len(self._bits):
            self._refill(count)
        out = self._bits[self._pos:self._pos + count]
        self._pos += count
        self.consumed += count
        return out

    def next_bit(self) -> int:
        return int(self.bits(1)[0])

    def next_uniform_bits(self, b: int) -> int:
        """Integer in [0, 2^b) built from the next b bits, MSB first."""
        if b <= 0:
            return 0
        chunk = self.bits(b)
        pad = (-b) % 8
        value = int.from_bytes(np.packbits(chunk, bitorder="big").tobytes(), "big")
        return value >> pad


def mean_exceeds(t_exp: int, k: int, thresh: int) -> bool:
    """True iff 2^(t_exp - k) >= thresh, by integer comparison."""
    d = t_exp - k
    if d < 0:
        return False  # 2^d < 1 <= thresh
    return (1 << d) >= thresh


def estimate(size: int, k: int) -> int:
    """size / 2^-k as an exact integer."""
    if size < 0 or k < 0:
        raise ValueError("size and k must be non-negative")
    return size << k


@lru_cache(maxsize=None)
def _tiny_threshold(e: int) -> int:
    with _MP_LOCK, mpmath.workprec(2 * POISSON_TINY_BITS + 64):
        p_nonzero = -mpmath.expm1(-mpmath.ldexp(1, e))
        return int(mpmath.floor(p_nonzero * mpmath.ldexp(1, POISSON_TINY_BITS)))


@lru_cache(maxsize=None)
def _cdf_table(e: int, precision: int) -> List[int]:
    """
    floor(2^precision * CDF(i)) of Poisson(2^e) for i = 0, 1, ...; the final
    entry is 2^precision once the remaining tail is below 2^-precision.
    """
    one = 1 << precision
    table: List[int] = []
    with _MP_LOCK, mpmath.workprec(precision + 64):
        lam = mpmath.ldexp(1, e)
        scale = mpmath.ldexp(1, precision)
        term = mpmath.exp(-lam)
        cdf = term
        i = 0
        while (1 - cdf) * scale >= 1:
            table.append(int(mpmath.floor(cdf * scale)))
            i += 1
            term = term * lam / i
            cdf += term
        table.append(one)
    logger.debug(f"Poisson CDF table for mean 2^{e} at {precision} bits: {len(table)} entries")
    return table


def poisson_pow2(e: int, rng: RandomSource) -> int:
    """
    Draw from Poisson(2^e) by inverse-CDF lookup.

    The uniform is extended 64 bits at a time while it lies within the guard
    band of a CDF boundary; at the precision cap the lower index wins.
    """
    if e <= POISSON_TINY_EXPONENT:
        return 1 if rng.next_uniform_bits(POISSON_TINY_BITS) < _tiny_threshold(e) else 0

    band = 1 << (POISSON_BASE_PRECISION - POISSON_GUARD_BITS)
    precision = POISSON_BASE_PRECISION
    u = rng.next_uniform_bits(precision)
    while True:
        table = _cdf_table(e, precision)
        i = bisect.bisect_right(table, u)
        near_upper = table[i] - u <= band
        near_lower = i > 0 and u - table[i - 1] < band
        if not (near_upper or near_lower):
            return i
        if precision >= POISSON_MAX_PRECISION:
            return i - 1 if near_lower else i
        u = (u << POISSON_EXTENSION_BITS) | rng.next_uniform_bits(POISSON_EXTENSION_BITS)
        precision += POISSON_EXTENSION_BITS
