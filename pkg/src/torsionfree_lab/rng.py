"""SplitMix64: the documented 64-bit generator behind every sampled object.

The algorithm is normative so seeds reproduce across implementations:

    state <- state + 0x9E3779B97F4A7C15                (mod 2^64)
    z <- state
    z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9         (mod 2^64)
    z <- (z xor (z >> 27)) * 0x94D049BB133111EB         (mod 2^64)
    output z xor (z >> 31)

``below(n)`` draws uniformly from [0, n) by rejecting outputs at or above the
largest multiple of n below 2^64.  ``split()`` seeds a child generator with the
parent's next output.
"""
from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def coin(self) -> bool:
        return self.next_u64() >> 63 == 1

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())
