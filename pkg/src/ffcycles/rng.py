"""Seeded, counter-based random numbers that reproduce bit-for-bit.

Draws come straight from the raw 64-bit output of the Philox4x64 bit
generator; sampling on top of it (floats, bounded integers, shuffles) is done
here with plain integer arithmetic so results do not depend on the numpy
version's higher-level sampling routines.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


class Rng:
    """Philox stream keyed by ``(seed, stream)``."""

    def __init__(self, seed: int, stream: int = 0, _block: int = 256):
        key = (int(seed) & _MASK64) | ((int(stream) & _MASK64) << 64)
        self._bitgen = np.random.Philox(key=key)
        self._block = _block
        self._buf: list[int] = []

    def next_u64(self) -> int:
        if not self._buf:
            self._buf = [int(v) for v in self._bitgen.random_raw(self._block)][::-1]
        return self._buf.pop()

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        """Unbiased integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def integers(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)

    def sample(self, n: int, k: int) -> list[int]:
        """``k`` distinct values from range(n): partial Fisher-Yates."""
        if not 0 <= k <= n:
            raise ValueError("sample larger than population")
        pool = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def shuffle(self, items: list) -> list:
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def spawn(self, stream: int) -> "Rng":
        return Rng(self.next_u64(), stream)
