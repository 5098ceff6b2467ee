# -*- coding: utf-8 -*-
"""
Seedable, platform independent random source.
===================================================
The generator is splitmix64:
    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
    output z ^ (z >> 31)
Integers in [lo, hi] are drawn by rejection sampling on 64-bit outputs, so
draws are exactly uniform and identical on every platform.

Independent streams for parallel trials come from `spawn(count)`: one
64-bit draw `base` from the parent, then child i is seeded with
mix64(base + (i + 1) * 0x9E3779B97F4A7C15).
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z):
    """splitmix64 output function."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class RandomSource(object):
    """ splitmix64 generator. Single owner: do not share between threads.
    Instantiation requires:
        - seed: int (reduced mod 2^64).
    """

    def __init__(self, seed=1111):
        self.seed = seed & MASK64
        self.state = self.seed

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def randint(self, lo, hi):
        """Uniform integer in [lo, hi] (inclusive)."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError('empty range [{}, {}]'.format(lo, hi))
        if span > 1 << 64:
            raise ValueError('range wider than 2^64')
        limit = ((1 << 64) // span) * span
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span

    def choice(self, items):
        if not items:
            raise ValueError('choice from an empty sequence')
        return items[self.randint(0, len(items) - 1)]

    def spawn(self, count):
        """`count` independent child sources, advancing this one by one draw."""
        base = self.next_u64()
        return [RandomSource(mix64(base + (i + 1) * GOLDEN_GAMMA)) for i in range(count)]

    def copy(self):
        clone = RandomSource(self.seed)
        clone.state = self.state
        return clone

    def __repr__(self):
        return 'RandomSource(seed={}, state={})'.format(self.seed, self.state)
