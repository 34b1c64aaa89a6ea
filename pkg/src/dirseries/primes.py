"""Prime generation, factorization, gpf queries, smooth numbers, radicals.

Integer substrate for the series modules.  Everything here is a pure
function of its arguments; PrimeTable and factorizations are immutable
once built and safe to share.
"""

from dataclasses import dataclass
from math import isqrt, log

import numpy as np


@dataclass(frozen=True)
class PrimeTable:
    """Ascending primes p_1=2, p_2=3, ... containing every prime <= limit."""

    primes: tuple
    limit: int


def sieve_primes(limit):
    """Classical sieve of Eratosthenes up to and including `limit`."""
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return PrimeTable(tuple(int(p) for p in np.flatnonzero(mask)), limit)


def first_n_primes(n):
    """The first n primes as a list."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n < 6:
        return [2, 3, 5, 7, 11][:n]
    # p_n < n (ln n + ln ln n) for n >= 6 (Rosser)
    bound = int(n * (log(n) + log(log(n)))) + 1
    table = sieve_primes(bound)
    while len(table.primes) < n:  # paranoia; the bound is proven
        bound *= 2
        table = sieve_primes(bound)
    return list(table.primes[:n])


def factorize(n):
    """Prime factorization of n >= 1 as ascending (prime, exponent) pairs."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                e += 1
                m //= d
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def gpf(n):
    """Greatest prime factor of n; gpf(1) = 1 by convention."""
    if n < 1:
        raise ValueError(f"gpf undefined for {n}")
    if n == 1:
        return 1
    largest = 1
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            largest = d
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    return m if m > 1 else largest


def radical(n):
    """Product of the distinct primes dividing n; radical(1) = 1."""
    if n < 1:
        raise ValueError(f"radical undefined for {n}")
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def is_prime_power(n):
    """Return the prime p if n = p^k for some k >= 1, else None."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac) == 1:
        return fac[0][0]
    return None


def smooth_numbers(index, limit):
    """All j <= limit whose prime factors lie among the first `index` primes.

    Enumerated by recursion over exponent vectors with product pruning;
    the smooth set is polylog-dense, so filtering every integer would
    dominate the cost.
    """
    if index < 1:
        raise ValueError(f"smooth index must be >= 1, got {index}")
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    primes = first_n_primes(index)
    out = []

    def descend(i, product):
        if i == len(primes):
            out.append(product)
            return
        p = primes[i]
        while True:
            descend(i + 1, product)
            if product > limit // p:
                break
            product *= p

    descend(0, 1)
    out.sort()
    return out
