"""The one pseudo-random source of the package.

64-bit linear congruential generator (Knuth's MMIX constants):

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2**64

`below(n)` takes the high 32 bits of the new state and scales them into
[0, n) by multiply-shift, so any implementation with 64-bit arithmetic
reproduces the same draws from the same seed.
"""

from __future__ import annotations

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK64 = (1 << 64) - 1


class Lcg64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & MASK64
        return self.state

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return ((self.next_u64() >> 32) * n) >> 32

    def spawn(self) -> int:
        """Seed for an independent sub-stream (one per scan trial)."""
        return self.next_u64()
