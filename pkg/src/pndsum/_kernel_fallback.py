"""Pure-Python segment kernel, numpy-vectorized.

Same algorithm and exact integer semantics as the compiled kernel in
``_kernel.pyx``; selected at import time when the extension is missing or
``PNDSUM_PURE`` is set. Produces bit-identical output arrays.
"""

from __future__ import annotations

import numpy as np

BACKEND = "fallback"

MAX_HI = 10**12


def pnd_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """Ascending uint64 array of the pnds in [lo, hi].

    `primes` must contain every prime <= isqrt(hi), ascending.
    """
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    if hi > MAX_HI:
        raise ValueError(f"hi={hi} beyond supported range {MAX_HI}")
    size = hi - lo + 1
    sigma = np.ones(size, dtype=np.uint64)
    rem = np.arange(lo, hi + 1, dtype=np.uint64)
    nvals = rem.copy()

    # pass 1: full sigma via prime-power extraction
    for p in _primes_below_sqrt(primes, hi):
        idx = _multiple_indices(lo, size, p)
        if idx.size == 0:
            continue
        pe = _extract_power(rem, idx, p)
        sigma[idx] *= (pe * p - 1) // (p - 1)
    big = rem > 1
    sigma[big] *= rem[big] + 1  # single prime factor > sqrt(hi)
    cand = (sigma >= 2 * nvals) & (nvals > 1)

    # pass 2: every maximal proper divisor n/p must be deficient
    for p in _primes_below_sqrt(primes, hi):
        idx = _multiple_indices(lo, size, p)
        idx = idx[cand[idx]]
        if idx.size == 0:
            continue
        n = nvals[idx]
        q = n // p
        pe = np.full(idx.size, p, dtype=np.uint64)
        while True:
            m = q % p == 0
            if not m.any():
                break
            q[m] //= p
            pe[m] *= p
        spe = (pe * p - 1) // (p - 1)
        spem1 = (pe - 1) // (p - 1)
        t = sigma[idx] // spe  # sigma(n / p^e), exact by multiplicativity
        bad = t * spem1 >= 2 * (n // p)
        cand[idx[bad]] = False
    check = cand & (rem > 1)
    if check.any():
        idx = np.nonzero(check)[0]
        bigp = rem[idx]
        n = nvals[idx]
        bad = sigma[idx] // (bigp + 1) >= 2 * (n // bigp)
        cand[idx[bad]] = False
    return nvals[cand]


def _primes_below_sqrt(primes: np.ndarray, hi: int):
    for p in primes.tolist():
        if p * p > hi:
            break
        yield int(p)


def _multiple_indices(lo: int, size: int, p: int) -> np.ndarray:
    start = ((lo + p - 1) // p) * p
    return np.arange(start - lo, size, p, dtype=np.int64)


def _extract_power(rem: np.ndarray, idx: np.ndarray, p: int) -> np.ndarray:
    """Divide p^e out of rem at idx (all divisible by p); return p^e."""
    sub = rem[idx] // p
    pe = np.full(idx.size, p, dtype=np.uint64)
    while True:
        m = sub % p == 0
        if not m.any():
            break
        sub[m] //= p
        pe[m] *= p
    rem[idx] = sub
    return pe
