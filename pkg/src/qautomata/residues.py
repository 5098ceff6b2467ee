# -*- coding: utf-8 -*-
"""
Arithmetic modulo random primes.
===================================================
Primes are drawn as uniform odd candidates in [2^(bits-1), 2^bits) and
kept when they pass Miller-Rabin with the fixed bases 2, 3, 5, 7, 11, 13
and 17, a test that is exact for every integer below 3.4e14.
"""
from dataclasses import dataclass, field
from fractions import Fraction

MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17)
DETERMINISTIC_LIMIT = 341550071728321


def is_probable_prime(m):
    """Miller-Rabin with fixed bases (exact below DETERMINISTIC_LIMIT)."""
    if m < 2:
        return False
    for p in MILLER_RABIN_BASES:
        if m % p == 0:
            return m == p
    d, r = m - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in MILLER_RABIN_BASES:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def random_prime(rng, bits=32):
    """Uniform-candidate prime in [2^(bits-1), 2^bits)."""
    if not 3 <= bits <= 48:
        raise ValueError('prime size must be between 3 and 48 bits')
    low, high = 1 << (bits - 1), (1 << bits) - 1
    while True:
        candidate = rng.randint(low, high) | 1
        if is_probable_prime(candidate):
            return candidate


def rational_mod(value, p):
    """Image of a rational in Z/pZ. Raises ZeroDivisionError when p divides
    the denominator.
    """
    value = Fraction(value)
    if value.denominator % p == 0:
        raise ZeroDivisionError('{} divides the denominator of {}'.format(p, value))
    return value.numerator * pow(value.denominator, -1, p) % p


@dataclass(frozen=True)
class ModularResult:
    """Outcome of an identity test by evaluation modulo random primes.
    `residues[i]` holds the pair of values compared modulo `primes[i]`.
    Any differing pair makes the verdict INEQUIVALENT, which is certain.
    """
    verdict: object
    primes: tuple
    residues: tuple
    details: dict = field(default_factory=dict)

    @property
    def equal(self):
        return all(left == right for left, right in self.residues)
