"""Slow, definition-level reference implementations.

Used only by the test suite and for generating frozen fixture values; the
fast paths are validated against these, never the other way around. None
of this code shares logic with the enumeration kernel: sigma tables come
from direct divisor accumulation, pnd membership scans every proper
divisor, smooth sums come from exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from pndsum.arith import primes_up_to

ORACLE_N_CAP = 10**8  # CI profile ceiling for exhaustive routines


@dataclass(frozen=True)
class OracleConfig:
    n_max: int
    prime_cap: int = 10**6

    def __post_init__(self):
        if not 1 <= self.n_max <= ORACLE_N_CAP:
            raise ValueError(f"n_max must be in [1, {ORACLE_N_CAP}]")


def naive_sigma(n: int) -> int:
    """Sum of divisors by trial of every d <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(d for d in range(1, n + 1) if n % d == 0)


def sigma_table(n_max: int) -> np.ndarray:
    """sigma(n) for all n in [0, n_max] by direct divisor accumulation.

    Index 0 is unused (0). Independent of any factorization logic.
    """
    sig = np.zeros(n_max + 1, dtype=np.int64)
    for d in range(1, n_max + 1):
        sig[d::d] += d
    return sig


def naive_pnd_list(n_max: int) -> list[int]:
    """All pnds <= n_max straight from the definition.

    n qualifies iff sigma(n) >= 2n and *every* proper divisor d has
    sigma(d) < 2d -- the full divisor scan, no maximal-divisor shortcut.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sig = sigma_table(n_max)
    idx = np.arange(n_max + 1, dtype=np.int64)
    candidates = np.nonzero(sig >= 2 * idx)[0]
    candidates = candidates[candidates >= 1]
    out = []
    for n in candidates.tolist():
        if _all_proper_divisors_deficient(n, sig):
            out.append(n)
    return out


def _all_proper_divisors_deficient(n: int, sig: np.ndarray) -> bool:
    d = np.arange(1, isqrt(n) + 1, dtype=np.int64)
    lo = d[n % d == 0]
    hi = n // lo
    divs = np.concatenate([lo, hi])
    divs = divs[divs < n]
    return bool(np.all(sig[divs] < 2 * divs))


def naive_smooth_recip_tail(x: int, y: int) -> tuple[float, float]:
    """Bracket [low, high] for sum of 1/n over y-smooth n > x.

    Enumerates every y-smooth integer <= x exactly (exponent vectors) and
    subtracts its reciprocal sum from the full Euler product
    prod_{p<=y} (1 - 1/p)^(-1), all in exact rationals; the bracket width
    is pure float rounding. Requires y <= 30 so the prime set stays tiny.
    """
    if y > 30:
        raise ValueError("oracle restricted to y <= 30")
    ps = [int(p) for p in primes_up_to(y)]
    head = Fraction(0)
    stack = [(1, 0)]
    while stack:
        n, i = stack.pop()
        if i == len(ps):
            head += Fraction(1, n)
            continue
        p = ps[i]
        m = n
        while m <= x:
            stack.append((m, i + 1))
            m *= p
    full = Fraction(1)
    for p in ps:
        full *= Fraction(p, p - 1)
    tail = full - head
    lo = _fraction_floor_float(tail)
    hi = math.nextafter(lo, math.inf)
    if Fraction(hi) < tail:
        hi = math.nextafter(hi, math.inf)
    if Fraction(lo) > tail:
        lo = math.nextafter(lo, -math.inf)
    return lo, hi


def _fraction_floor_float(fr: Fraction) -> float:
    v = fr.numerator / fr.denominator
    return v if Fraction(v) <= fr else math.nextafter(v, -math.inf)


def prime_product(x: float) -> float:
    """prod_{p<=x} (1 - 1/p), accumulated as a compensated log sum."""
    if x < 2:
        raise ValueError("x must be >= 2")
    ps = primes_up_to(int(x)).astype(np.float64)
    return math.exp(math.fsum(np.log1p(-1.0 / ps).tolist()))


def theta_check(x: float) -> bool:
    """Chebyshev theta(x) < (1 + 2.3e-8) * x on sieved primes."""
    if not 2 <= x <= ORACLE_N_CAP:
        raise ValueError(f"x must be in [2, {ORACLE_N_CAP}]")
    ps = primes_up_to(int(x)).astype(np.float64)
    theta = math.fsum(np.log(ps).tolist())
    return theta < (1 + 2.3e-8) * x
