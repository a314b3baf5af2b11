"""Pinned deterministic random number generation.

Every randomized object in the lab (sets, weights, sweep instances) is drawn
from the splitmix64 stream below, so a (seed, parameters) pair reproduces the
same bytes on any machine and any Python version.  The generator is the
standard splitmix64 finalizer:

    x    <- (x + 0x9E3779B97F4A7C15) mod 2^64
    z    <- x
    z    <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z    <- (z xor (z >> 27)) * 0x94D049BB133111EB mod 2^64
    out  <- z xor (z >> 31)

Sub-streams are derived by folding integer tags into the state with the same
mixing function (see `derive_seed`).
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential splitmix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return _mix(self.state)

    def next_float(self) -> float:
        """Uniform double in [0, 1) using the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection, n >= 1."""
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n


def derive_seed(seed: int, *tags: int) -> int:
    """Deterministically derive a sub-stream seed from a seed and integer tags."""
    s = seed & _MASK
    for t in tags:
        s = _mix((s + _GAMMA) & _MASK) ^ (t & _MASK)
        s = _mix(s)
    return s
