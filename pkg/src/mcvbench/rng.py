"""Deterministic random streams for reproducible corpus generation.

Everything downstream of a master seed is a pure function of
(master_seed, condition_ordinal, image_index), so corpora regenerate
byte-identically on any platform and with any worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1

# SplitMix64 constants (Steele, Lea & Flood sequence).
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Second stripe constant so condition and image indices mix independently.
_IMAGE_STRIPE = 0xC2B2AE3D27D4EB4F

_U53 = 2.0**-53


def mix64(value: int) -> int:
    """SplitMix64 finalizer: xorshift-multiply avalanche of a 64-bit word."""
    z = value & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return (z ^ (z >> 31)) & MASK64


@dataclass
class RandomStream:
    """SplitMix64 generator; identical state yields identical draws everywhere.

    The state advances by the golden-gamma increment per draw, so a block of
    draws can be produced counter-style without losing sequence equality with
    repeated single draws.
    """

    state: int

    def __post_init__(self) -> None:
        self.state &= MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        return mix64(self.state)

    def uniform(self) -> float:
        """One draw in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * _U53

    def uniform_block(self, count: int) -> np.ndarray:
        """`count` uniforms in [0, 1), advancing the state by `count` steps.

        Vectorized over the counter form of the sequence; bit-identical to
        calling :meth:`uniform` `count` times.
        """
        if count < 0:
            raise ValueError(f"draw count must be >= 0, got {count}")
        steps = np.arange(1, count + 1, dtype=np.uint64)
        z = np.uint64(self.state) + steps * np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
        self.state = (self.state + count * _GOLDEN) & MASK64
        return (z >> np.uint64(11)).astype(np.float64) * _U53


def derive_stream(master_seed: int, condition_ordinal: int, image_index: int) -> RandomStream:
    """Independent stream for one (condition, image) pair of a seeded corpus.

    Distinct (condition_ordinal, image_index) pairs get distinct initial
    states with overwhelming probability; swapping the two indices changes
    the stream because they mix through different stripe constants.
    """
    seed = (
        (master_seed & MASK64)
        ^ ((condition_ordinal * _GOLDEN) & MASK64)
        ^ ((image_index * _IMAGE_STRIPE) & MASK64)
    )
    return RandomStream(state=mix64(seed))
