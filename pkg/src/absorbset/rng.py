"""SplitMix64 stream with unbiased bounded draws.

Pure integer arithmetic so a seed reproduces the same stream on any platform.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential SplitMix64 generator; ``state`` is the seed before any draw."""

    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.state = seed
        self.draws = 0

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        self.draws += 1
        return mix64(self.state)

    def below(self, s: int) -> int:
        """Uniform index in ``[0, s)`` by rejection; consumes at least one draw."""
        if s < 1:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % s)
        while True:
            r = self.next()
            if r < limit:
                return r % s

    def block(self, count: int) -> np.ndarray:
        """The next ``count`` outputs as a ``uint64`` array (advances the stream)."""
        k = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + k * np.uint64(GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
            z = z ^ (z >> np.uint64(31))
        self.state = (self.state + count * GAMMA) & MASK64
        self.draws += count
        return z
