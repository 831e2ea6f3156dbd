"""Seeded integer streams that stay stable across numpy releases.

Only the raw 64-bit output of the PCG64 bit generator is used; numpy
guarantees that stream for a given seed, while the distribution methods of
``Generator`` may change between versions. Bounded integers are drawn by
rejection sampling on top of it.
"""
from __future__ import annotations

import numpy as np

PRNG_NAME = "pcg64-raw/rejection-v1"

_MASK64 = (1 << 64) - 1


class Stream:
    def __init__(self, seed: int):
        self.seed = int(seed)
        self._bits = np.random.PCG64(self.seed)

    def next64(self) -> int:
        return int(self._bits.random_raw()) & _MASK64

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n == 1:
            return 0
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next64()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def coin(self) -> bool:
        return bool(self.next64() >> 63)
