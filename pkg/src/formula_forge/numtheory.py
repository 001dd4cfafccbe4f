"""Deterministic primality and factorization by trial division, plus a
classic sieve used as an independent oracle for the Zeta recursions."""

from __future__ import annotations

from math import isqrt

import numpy as np

from .errors import DomainError, ResourceLimitError

MAX_TRIAL = 2**64


def _check_range(n: int):
    if n >= MAX_TRIAL:
        raise ResourceLimitError(f"{n} is above the trial-division limit 2**64")


def _candidates():
    yield 2
    yield 3
    d = 5
    while True:
        yield d
        yield d + 2
        d += 6


def is_prime(n: int) -> bool:
    if n < 0:
        raise DomainError("is_prime expects a nonnegative integer")
    _check_range(n)
    if n < 4:
        return n >= 2
    if n % 2 == 0 or n % 3 == 0:
        return False
    r = isqrt(n)
    d = 5
    while d <= r:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def factor(n: int) -> list[tuple[int, int]]:
    """Prime factorization as ascending ``(prime, exponent)`` pairs.

    >>> factor(255)
    [(3, 1), (5, 1), (17, 1)]
    >>> factor(1)
    []
    """
    if n < 1:
        raise DomainError("factor expects a positive integer")
    _check_range(n)
    out = []
    for d in _candidates():
        if d * d > n:
            break
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
    if n > 1:
        out.append((n, 1))
    return out


def eratosthenes(limit: int) -> list[int]:
    """All primes ``<= limit``."""
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).tolist()
