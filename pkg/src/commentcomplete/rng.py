"""Seeded random streams with a fixed algorithm.

Every draw is built from raw PCG64 64-bit outputs (seeded through
``numpy.random.SeedSequence``) using explicit rejection sampling, so the
results do not depend on numpy's higher-level sampling routines.
"""

import hashlib
from typing import List, MutableSequence, TypeVar

import numpy as np

ALGORITHM = "PCG64/SeedSequence, raw-output rejection sampling"

T = TypeVar("T")

_MASK64 = (1 << 64) - 1


def _key_words(key: str) -> List[int]:
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return [int.from_bytes(digest[i:i + 4], "little") for i in range(0, 16, 4)]


class SeededStream:
    def __init__(self, seed: int, key: str = ""):
        seed = int(seed) & _MASK64
        entropy = [seed & 0xFFFFFFFF, seed >> 32] + _key_words(key)
        self._bitgen = np.random.PCG64(np.random.SeedSequence(entropy))

    def raw(self) -> int:
        return int(self._bitgen.random_raw())

    def randbelow(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        # largest multiple of n that fits in 64 bits; reject above it
        limit = ((1 << 64) // n) * n
        while True:
            r = self.raw()
            if r < limit:
                return r % n

    def shuffle(self, items: MutableSequence[T]) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, low: int, high: int, k: int) -> List[int]:
        """``k`` distinct integers from ``[low, high)`` in draw order (partial Fisher-Yates)."""
        pool = list(range(low, high))
        if k > len(pool):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self.randbelow(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def stream_for(seed: int, key: str) -> SeededStream:
    return SeededStream(seed, key)
