"""Exact integer arithmetic for multiplicative functions.

Factorization, sum of divisors, abundancy classification and the
square-full/square-free splitting that the counting bounds rely on.
All functions are pure and exact (Python integers); nothing here touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

import numpy as np

# sigma() refuses results at or beyond this width instead of silently growing;
# mirrors the fixed-width contract of the compiled kernel.
SIGMA_RESULT_BITS = 128

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic < 3.3e24


class ArithmeticOverflowError(ArithmeticError):
    """Result would exceed the supported fixed width."""


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as a uint64 array (simple bool sieve)."""
    if n < 2:
        return np.zeros(0, dtype=np.uint64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.uint64)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Classification(Enum):
    DEFICIENT = "deficient"
    PERFECT = "perfect"
    ABUNDANT = "abundant"


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its full prime-power factorization.

    Invariants (checked on construction): the factor product reconstructs n,
    primes are strictly increasing and pass a deterministic primality test,
    exponents are >= 1, and n fits in 64 bits.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not 1 <= self.n < 2**64:
            raise ValueError(f"n={self.n} outside supported range [1, 2^64)")
        prod = 1
        prev = 1
        for p, e in self.factors:
            if e < 1:
                raise ValueError(f"exponent {e} < 1 for prime {p}")
            if p <= prev:
                raise ValueError("primes not strictly increasing")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factor product {prod} != n = {self.n}")

    @property
    def largest_prime(self) -> int:
        """P(n); 1 by convention for n = 1."""
        return self.factors[-1][0] if self.factors else 1

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)


_SIEVE_CAP = 2_000_000
_small_primes: list[int] = []


def _trial_primes(limit: int) -> list[int]:
    global _small_primes
    if not _small_primes or _small_primes[-1] < limit:
        _small_primes = [int(p) for p in primes_up_to(max(limit, 1 << 16))]
    return _small_primes


def factorize(n: int) -> FactoredInteger:
    """Factor a single integer by trial division over sieved primes.

    Bulk factorization over ranges is the enumeration module's job; this
    is the utility path for individual values.
    """
    if n == 0:
        raise ValueError("0 has no prime factorization")
    if n < 0:
        raise ValueError("n must be positive")
    if n == 1:
        return FactoredInteger(1, ())
    m = n
    factors = []
    root = isqrt(m)
    for p in _trial_primes(min(root, _SIEVE_CAP)):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
            root = isqrt(m)
    if m > 1:
        if is_prime(m):
            factors.append((m, 1))
        else:
            r = isqrt(m)
            if r * r == m and is_prime(r):
                factors.append((r, 2))
            else:
                raise ValueError(
                    f"cofactor {m} of n={n} has no prime factor below "
                    f"{_SIEVE_CAP}; out of the supported trial-division range"
                )
    return FactoredInteger(n, tuple(factors))


def sigma_prime_power(p: int, e: int) -> int:
    """sigma(p^e) = (p^(e+1) - 1) / (p - 1), exact."""
    return (p ** (e + 1) - 1) // (p - 1)


def sigma(f: FactoredInteger) -> int:
    """Sum of divisors, exact; refuses results >= 2^128."""
    result = 1
    for p, e in f.factors:
        result *= sigma_prime_power(p, e)
        if result >> SIGMA_RESULT_BITS:
            raise ArithmeticOverflowError(
                f"sigma({f.n}) exceeds {SIGMA_RESULT_BITS} bits"
            )
    return result


def classify(f: FactoredInteger) -> Classification:
    """Deficient/perfect/abundant by exact comparison of sigma(n) with 2n."""
    s = sigma(f)
    if s < 2 * f.n:
        return Classification.DEFICIENT
    if s == 2 * f.n:
        return Classification.PERFECT
    return Classification.ABUNDANT


def squarefull_decompose(f: FactoredInteger) -> tuple[int, int]:
    """Split n = s*q with s square-full, q square-free, gcd(s, q) = 1.

    s collects the prime powers with exponent >= 2, q the primes with
    exponent exactly 1; s(1) = q(1) = 1.
    """
    s = 1
    q = 1
    for p, e in f.factors:
        if e >= 2:
            s *= p**e
        else:
            q *= p
    return s, q


def count_squarefull(y: int) -> int:
    """K(y): number of square-full integers in [1, y].

    Enumerates a^2 * b^3 with b square-free; the representation is unique
    but values are deduplicated through a set anyway. 1 is square-full
    (vacuous divisibility condition).
    """
    if y < 1:
        raise ValueError("y must be >= 1")
    found = set()
    b = 1
    while b * b * b <= y:
        if _is_squarefree(b):
            b3 = b * b * b
            a = 1
            while a * a * b3 <= y:
                found.add(a * a * b3)
                a += 1
        b += 1
    return len(found)


def _is_squarefree(n: int) -> bool:
    if n == 1:
        return True
    return all(e == 1 for _, e in factorize(n).factors)
