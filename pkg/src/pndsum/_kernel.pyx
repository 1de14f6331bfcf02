# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled segment kernel: pnd values in [lo, hi] via a segmented factor sieve.

Two passes over the segment. Pass 1 iterates every prime p <= sqrt(hi)
over its multiples, extracts the full power p^e and accumulates
sigma(p^e) multiplicatively; leftovers > 1 are single large prime
factors. Pass 2 re-walks the primes over the surviving nondeficient
candidates and knocks out any n with a nondeficient maximal proper
divisor n/p, using sigma(n/p) = sigma(n) / sigma(p^e) * sigma(p^(e-1)).
All arithmetic is exact uint64; the wrapper enforces hi <= 10^12 so that
every intermediate provably fits.
"""

import numpy as np

from libc.stdint cimport uint8_t, uint64_t

BACKEND = "compiled"

# sigma(n) < 7n and p^(e+1) <= n * sqrt(hi) stay below 2^64 up to here
MAX_HI = 10**12


def pnd_segment(lo, hi, primes):
    """Ascending uint64 array of the pnds in [lo, hi].

    `primes` must contain every prime <= isqrt(hi), ascending.
    """
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    if hi > MAX_HI:
        raise ValueError(f"hi={hi} beyond supported range {MAX_HI}")
    primes = np.ascontiguousarray(primes, dtype=np.uint64)
    sigma_arr = np.ones(hi - lo + 1, dtype=np.uint64)
    rem_arr = np.arange(lo, hi + 1, dtype=np.uint64)
    cand_arr = np.zeros(hi - lo + 1, dtype=np.uint8)
    cdef uint64_t[::1] sigma = sigma_arr
    cdef uint64_t[::1] rem = rem_arr
    cdef uint8_t[::1] cand = cand_arr
    cdef const uint64_t[::1] ps = primes
    cdef uint64_t clo = lo, chi = hi
    cdef Py_ssize_t count
    with nogil:
        count = _sieve_segment(clo, chi, ps, sigma, rem, cand)
    out = np.empty(count, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef Py_ssize_t i, k = 0
    for i in range(hi - lo + 1):
        if cand[i]:
            o[k] = clo + i
            k += 1
    return out


cdef Py_ssize_t _sieve_segment(uint64_t lo, uint64_t hi,
                               const uint64_t[::1] ps,
                               uint64_t[::1] sigma,
                               uint64_t[::1] rem,
                               uint8_t[::1] cand) noexcept nogil:
    cdef Py_ssize_t size = hi - lo + 1
    cdef Py_ssize_t j, i
    cdef Py_ssize_t nprimes = ps.shape[0]
    cdef uint64_t p, start, pe, r, n, q, spe, spem1, t, bigp
    cdef Py_ssize_t count = 0

    # pass 1: full sigma via prime-power extraction
    for j in range(nprimes):
        p = ps[j]
        if p * p > hi:
            break
        start = ((lo + p - 1) // p) * p
        i = start - lo
        while i < size:
            r = rem[i] // p
            pe = p
            while r % p == 0:
                r //= p
                pe *= p
            rem[i] = r
            sigma[i] *= (pe * p - 1) // (p - 1)
            i += p
    for i in range(size):
        if rem[i] > 1:
            sigma[i] *= rem[i] + 1  # single prime factor > sqrt(hi)
        n = lo + i
        if sigma[i] >= 2 * n and n > 1:
            cand[i] = 1

    # pass 2: every maximal proper divisor n/p must be deficient
    for j in range(nprimes):
        p = ps[j]
        if p * p > hi:
            break
        start = ((lo + p - 1) // p) * p
        i = start - lo
        while i < size:
            if cand[i]:
                n = lo + i
                q = n // p
                pe = p
                while q % p == 0:
                    q //= p
                    pe *= p
                spe = (pe * p - 1) // (p - 1)
                spem1 = (pe - 1) // (p - 1)
                t = sigma[i] // spe  # sigma(n / p^e), exact by multiplicativity
                if t * spem1 >= 2 * (n // p):
                    cand[i] = 0
            i += p
    for i in range(size):
        if cand[i] and rem[i] > 1:
            bigp = rem[i]
            n = lo + i
            if sigma[i] // (bigp + 1) >= 2 * (n // bigp):
                cand[i] = 0
        if cand[i]:
            count += 1
    return count
