"""Segmented enumeration of primitive nondeficient numbers.

A pnd is a nondeficient n (sigma(n) >= 2n) all of whose proper divisors
are deficient; by upward inheritance of nondeficiency it suffices to
check the omega(n) maximal proper divisors n/p, which is what the kernel
does (the reduction is validated against the all-divisors oracle in the
test suite).

Reciprocal-sum accounting: each 1/n is rounded to the nearest double and
then accumulated *exactly* in 2^-128 fixed point (an integer). Every
double 1/n with n < 2^64 is an exact multiple of 2^-128, so segment sums
and merges are exact integer arithmetic -- associative and reproducible
bit-for-bit across any segmentation or worker schedule. The
(principal, compensation) pair exposed on summaries and checkpoints is
the correctly-rounded two-double view of that exact value.
"""

from __future__ import annotations

import json
import os
import struct
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from pndsum import __version__
from pndsum.arith import FactoredInteger, primes_up_to, sigma, sigma_prime_power

try:
    from pndsum import _kernel
except ImportError:  # extension not built
    _kernel = None
from pndsum import _kernel_fallback

DEFAULT_SEGMENT_SIZE = 10**7

RECIP_SCALE_BITS = 128
_RECIP_ONE = 1 << RECIP_SCALE_BITS

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = 0xFFFFFFFFFFFFFFFF


class CheckpointError(ValueError):
    """Invalid or incompatible checkpoint contents."""


def active_backend():
    """Kernel module in use: compiled extension unless absent or PNDSUM_PURE set."""
    if _kernel is not None and not os.environ.get("PNDSUM_PURE"):
        return _kernel
    return _kernel_fallback


def backend_name() -> str:
    return active_backend().BACKEND


# ---------------------------------------------------------------- accounting


def recip_fixed(n: int) -> int:
    """The double nearest 1/n, as an exact integer multiple of 2^-128."""
    num, den = (1.0 / n).as_integer_ratio()
    q, r = divmod(num << RECIP_SCALE_BITS, den)
    if r:
        raise ValueError(f"1/{n} not representable in 2^-{RECIP_SCALE_BITS} fixed point")
    return q


def fixed_to_pair(acc: int) -> tuple[float, float]:
    """Correctly-rounded (principal, compensation) view of a fixed-point value."""
    principal = acc / _RECIP_ONE
    num, den = principal.as_integer_ratio()
    residual = acc - (num << RECIP_SCALE_BITS) // den
    return principal, residual / _RECIP_ONE


def pair_to_fixed(principal: float, compensation: float) -> int:
    """Best-effort exact reconstruction for records lacking the hex field."""
    total = 0
    for x in (principal, compensation):
        num, den = float(x).as_integer_ratio()
        total += (num << RECIP_SCALE_BITS) // den
    return total


def sequence_hash(values) -> int:
    """FNV-1a over the little-endian 8-byte encodings, in ascending order."""
    h = _FNV_OFFSET
    for v in values:
        x = int(v)
        for _ in range(8):
            h = ((h ^ (x & 0xFF)) * _FNV_PRIME) & _U64
            x >>= 8
    return h


# ------------------------------------------------------------------ summaries


@dataclass(frozen=True)
class SegmentSummary:
    """Result of enumerating one contiguous range [lo, hi]."""

    lo: int
    hi: int
    pnd_count: int
    recip_acc: int  # exact 2^-128 fixed-point sum of rounded 1/n
    largest_pnd: int  # 0 if the segment holds no pnd
    sample_hash: int

    @property
    def recip_principal(self) -> float:
        return fixed_to_pair(self.recip_acc)[0]

    @property
    def recip_compensation(self) -> float:
        return fixed_to_pair(self.recip_acc)[1]

    def to_record(self) -> dict:
        principal, compensation = fixed_to_pair(self.recip_acc)
        return {
            "type": "segment",
            "lo": self.lo,
            "hi": self.hi,
            "pnd_count": self.pnd_count,
            "recip_principal": principal,
            "recip_compensation": compensation,
            "recip_exact": hex(self.recip_acc),
            "largest_pnd": self.largest_pnd,
            "sample_hash": struct.pack("<Q", self.sample_hash).hex(),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SegmentSummary":
        if "recip_exact" in rec:
            acc = int(rec["recip_exact"], 16)
        else:
            acc = pair_to_fixed(rec["recip_principal"], rec["recip_compensation"])
        return cls(
            lo=int(rec["lo"]),
            hi=int(rec["hi"]),
            pnd_count=int(rec["pnd_count"]),
            recip_acc=acc,
            largest_pnd=int(rec["largest_pnd"]),
            sample_hash=struct.unpack("<Q", bytes.fromhex(rec["sample_hash"]))[0],
        )


@dataclass
class Checkpoint:
    """Ordered, contiguous segment summaries plus run metadata."""

    segments: list[SegmentSummary] = field(default_factory=list)
    segment_size: int = DEFAULT_SEGMENT_SIZE
    version: str = __version__
    wall_clock: float = 0.0

    @property
    def lo(self) -> int:
        return self.segments[0].lo if self.segments else 0

    @property
    def hi(self) -> int:
        return self.segments[-1].hi if self.segments else 0

    @property
    def pnd_count(self) -> int:
        return sum(s.pnd_count for s in self.segments)

    @property
    def recip_acc(self) -> int:
        total = 0
        for s in sorted(self.segments, key=lambda s: s.lo):
            total += s.recip_acc
        return total

    @property
    def recip_pair(self) -> tuple[float, float]:
        return fixed_to_pair(self.recip_acc)

    @property
    def largest_pnd(self) -> int:
        return max((s.largest_pnd for s in self.segments), default=0)

    def validate(self, allow_gaps: bool = False) -> None:
        segs = sorted(self.segments, key=lambda s: s.lo)
        for a, b in zip(segs, segs[1:]):
            if b.lo <= a.hi:
                raise CheckpointError(f"segments overlap: [{a.lo},{a.hi}] and [{b.lo},{b.hi}]")
            if b.lo != a.hi + 1 and not allow_gaps:
                raise CheckpointError(f"gap between hi={a.hi} and lo={b.lo} (pass allow_gaps to accept)")

    def save(self, path) -> None:
        tmp = str(path) + ".tmp"
        with open(tmp, "w") as fh:
            meta = {
                "type": "meta",
                "segment_size": self.segment_size,
                "version": self.version,
                "wall_clock": self.wall_clock,
            }
            fh.write(json.dumps(meta, sort_keys=True) + "\n")
            for seg in sorted(self.segments, key=lambda s: s.lo):
                fh.write(json.dumps(seg.to_record(), sort_keys=True) + "\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path) -> "Checkpoint":
        cp = cls(segments=[])
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if rec.get("type") == "meta":
                    cp.segment_size = int(rec.get("segment_size", DEFAULT_SEGMENT_SIZE))
                    cp.version = str(rec.get("version", ""))
                    cp.wall_clock = float(rec.get("wall_clock", 0.0))
                elif rec.get("type") == "segment":
                    cp.segments.append(SegmentSummary.from_record(rec))
                else:
                    raise CheckpointError(f"unrecognized record type {rec.get('type')!r}")
        cp.segments.sort(key=lambda s: s.lo)
        return cp


def merge(a: Checkpoint, b: Checkpoint, allow_gaps: bool = False) -> Checkpoint:
    """Deterministic ascending merge of two checkpoints over disjoint ranges."""
    merged = Checkpoint(
        segments=sorted(a.segments + b.segments, key=lambda s: s.lo),
        segment_size=a.segment_size if a.segments else b.segment_size,
        version=a.version if a.segments else b.version,
        wall_clock=a.wall_clock + b.wall_clock,
    )
    merged.validate(allow_gaps=allow_gaps)
    return merged


# ---------------------------------------------------------------- enumeration


def is_pnd(f: FactoredInteger) -> bool:
    """sigma(n) >= 2n and every maximal proper divisor n/p is deficient."""
    n = f.n
    if n == 1 or sigma(f) < 2 * n:
        return False
    s = sigma(f)
    for p, e in f.factors:
        # sigma(n/p) = sigma(n) / sigma(p^e) * sigma(p^(e-1))
        t = s // sigma_prime_power(p, e) * sigma_prime_power(p, e - 1)
        if t >= 2 * (n // p):
            return False
    return True


def pnd_values(lo: int, hi: int, primes: np.ndarray | None = None) -> np.ndarray:
    """Ascending array of pnds in [lo, hi] from the active kernel."""
    if primes is None:
        primes = primes_up_to(isqrt(hi))
    return active_backend().pnd_segment(lo, hi, primes)


def summarize_segment(lo: int, hi: int, values: np.ndarray) -> SegmentSummary:
    acc = 0
    for v in values.tolist():
        acc += recip_fixed(v)
    return SegmentSummary(
        lo=lo,
        hi=hi,
        pnd_count=int(values.size),
        recip_acc=acc,
        largest_pnd=int(values[-1]) if values.size else 0,
        sample_hash=sequence_hash(values.tolist()),
    )


def enumerate_segment(lo: int, hi: int, primes: np.ndarray | None = None) -> SegmentSummary:
    """Enumerate one segment; hi - lo is expected to respect the segment size."""
    return summarize_segment(lo, hi, pnd_values(lo, hi, primes))


def split_range(lo: int, hi: int, segment_size: int) -> list[tuple[int, int]]:
    return [(s, min(s + segment_size - 1, hi)) for s in range(lo, hi + 1, segment_size)]


def enumerate_range(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> Checkpoint:
    """Enumerate [lo, hi] as independent segments, merged in ascending order.

    Workers may complete out of order; the result is schedule-independent.
    """
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    if segment_size < 1 or threads < 1:
        raise ValueError("segment_size and threads must be >= 1")
    primes = primes_up_to(isqrt(hi))
    bounds = split_range(lo, hi, segment_size)
    t0 = time.perf_counter()
    if threads == 1:
        segments = [enumerate_segment(a, b, primes) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(enumerate_segment, a, b, primes) for a, b in bounds]
            segments = [f.result() for f in futures]
    segments.sort(key=lambda s: s.lo)
    cp = Checkpoint(
        segments=segments,
        segment_size=segment_size,
        wall_clock=time.perf_counter() - t0,
    )
    cp.validate()
    return cp


def partial_sum(cp: Checkpoint, x: int) -> float:
    """Sum of 1/n over pnds <= x, from a checkpoint covering [1, x]."""
    if not cp.segments or cp.lo != 1:
        raise CheckpointError("checkpoint does not start at 1")
    cp.validate()
    if cp.hi < x:
        raise CheckpointError(f"checkpoint covers [1, {cp.hi}], need [1, {x}]")
    acc = 0
    for seg in sorted(cp.segments, key=lambda s: s.lo):
        if seg.hi <= x:
            acc += seg.recip_acc
        elif seg.lo <= x:
            # x falls inside this segment: re-enumerate its [lo, x] prefix
            acc += summarize_segment(seg.lo, x, pnd_values(seg.lo, x)).recip_acc
    return acc / _RECIP_ONE
