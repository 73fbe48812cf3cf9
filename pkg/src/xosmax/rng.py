"""Deterministic randomness for sampling-based solvers and instance generation.

The generator is splitmix64: 64 bits of state, one add-and-mix step per
output word (constants 0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9,
0x94D049BB133111EB, shifts 30/27/31). It is seedable, portable, and its
output stream for a given seed is a compatibility promise of this package:
regression tests pin known-answer vectors, so the stream will not change
across versions. Bounded draws use rejection sampling, which keeps them
exactly uniform, and fixed-size subsets come from a partial Fisher-Yates
shuffle, which makes every m-element subset exactly equally likely.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 stream; state is a single 64-bit word."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection; no modulo bias."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        # Largest multiple of bound that fits in 64 bits; draws at or above
        # it are rejected so the remainder is exactly uniform.
        threshold = _MASK64 + 1 - ((_MASK64 + 1) % bound)
        while True:
            r = self.next_u64()
            if r < threshold:
                return r % bound

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high], inclusive."""
        if high < low:
            raise ValueError("empty range")
        return low + self.randrange(high - low + 1)


def sample_positions(n: int, m: int, rng: SplitMix64) -> list[int]:
    """m distinct positions from {0..n-1}, uniform over all m-subsets.

    Partial Fisher-Yates: after i swaps the prefix idx[:i] is a uniform
    i-permutation, so the returned prefix hits every m-subset with equal
    probability.
    """
    if not 0 <= m <= n:
        raise ValueError(f"cannot sample {m} of {n} positions")
    idx = list(range(n))
    for i in range(m):
        j = i + rng.randrange(n - i)
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:m]


def sample_mask(n: int, m: int, rng: SplitMix64) -> int:
    """Uniform size-m subset of {0..n-1} as a bitmask."""
    out = 0
    for p in sample_positions(n, m, rng):
        out |= 1 << p
    return out
