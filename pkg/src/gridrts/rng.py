"""Seedable 64-bit RNG with portable, platform-independent output.

The engine itself never draws randomness during the tick loop; this
generator exists for map decoration, benchmark drivers, and the random
agent.  Its entire state is one 64-bit integer, which makes it trivial
to store in a game state and include in determinism hashes.
"""
from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64: tiny, fast, and reproducible across platforms."""

    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n). Rejection-samples to avoid modulo bias."""
        if n <= 0:
            raise ValueError("randrange() arg must be positive")
        limit = _MASK - (_MASK % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def randint(self, a: int, b: int) -> int:
        """Uniform integer in [a, b], inclusive."""
        return a + self.randrange(b - a + 1)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def choice(self, seq):
        if not seq:
            raise IndexError("choice from empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def fork(self) -> "SplitMix64":
        """Derive an independent child stream."""
        return SplitMix64(self.next_u64())
