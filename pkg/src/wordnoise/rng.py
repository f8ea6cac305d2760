"""Portable, seedable random streams.

SplitMix64 expands seeds, xoshiro256** produces the draws. Every random
decision in the package goes through :class:`Stream`, so outputs are
bit-identical across platforms and independent of evaluation order.
"""

from __future__ import annotations

import hashlib

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class Stream:
    """xoshiro256** generator with the draw helpers used by the noise code."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, state: tuple[int, int, int, int]):
        if not any(state):
            raise ValueError("xoshiro256** state must not be all zero")
        self.s0, self.s1, self.s2, self.s3 = (w & MASK64 for w in state)

    @classmethod
    def from_seed(cls, seed: int) -> "Stream":
        sm = SplitMix64(seed)
        return cls((sm.next(), sm.next(), sm.next(), sm.next()))

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, k: int) -> int:
        """Uniform integer in [0, k) by rejection on the high bits.

        ``k == 1`` returns 0 without consuming a draw.
        """
        if k <= 0:
            raise ValueError(f"k must be positive, got {k}")
        if k == 1:
            return 0
        shift = 64 - (k - 1).bit_length()
        while True:
            x = self.next_u64() >> shift
            if x < k:
                return x

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seed(seed: int, *keys: int) -> int:
    """Fold integer keys into a seed, one SplitMix64 step per key."""
    for key in keys:
        seed = SplitMix64((seed ^ key) & MASK64).next()
    return seed & MASK64


def substream(seed: int, index: int) -> Stream:
    """Stream for item ``index`` (e.g. a sentence) under ``seed``."""
    return Stream.from_seed((seed ^ index) & MASK64)


def name_key(name: str) -> int:
    """Stable 64-bit key for a string label (Python's ``hash`` is salted)."""
    return int.from_bytes(hashlib.blake2b(name.encode("utf-8"), digest_size=8).digest(), "little")


def check_seed(seed: int) -> int:
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return seed
