"""Cross-module invariant suites behind the `verify` CLI command.

Each check returns a VerifyResult; the CLI prints one pass/fail line per
suite and exits nonzero if any failed. The same functions back the
acceptance tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import isqrt, log, sqrt

import numpy as np

from pndsum import bounds
from pndsum.arith import factorize, primes_up_to, squarefull_decompose
from pndsum.enumeration import enumerate_range, pnd_values
from pndsum.errors import NotApplicableError
from pndsum.oracle import naive_pnd_list, naive_smooth_recip_tail, sigma_table


@dataclass
class VerifyResult:
    name: str
    passed: bool
    detail: str
    elapsed: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.elapsed:.1f}s)"


def _timed(name, fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return VerifyResult(name, passed, detail, time.perf_counter() - t0)


def largest_prime_factors(values: np.ndarray) -> np.ndarray:
    """P(n) for each n in the array (vectorized trial division)."""
    rem = np.asarray(values, dtype=np.uint64).copy()
    if rem.size == 0:
        return rem
    best = np.ones(rem.size, dtype=np.uint64)
    for p in primes_up_to(isqrt(int(rem.max()))).tolist():
        p = int(p)
        mask = rem % p == 0
        if not mask.any():
            continue
        best[mask] = p
        sub = rem[mask]
        while True:
            m = sub % p == 0
            if not m.any():
                break
            sub[m] //= p
        rem[mask] = sub
    return np.where(rem > 1, rem, best)


def check_b_range(k_lo: int = 191, k_hi: int = 5000) -> VerifyResult:
    """b_k in (0, 1/2) across the tail range, >= 0.46 at the spot checks."""

    def run():
        bad = []
        for k in range(k_lo, k_hi + 1):
            b = bounds._solve_b_core(k + 1.0, bounds.tail_smoothness_log(k))
            if not 0 < b < 0.5:
                bad.append((k, b))
        spots = {k: bounds._solve_b_core(k + 1.0, bounds.tail_smoothness_log(k)) for k in (10**4, 2 * 10**4)}
        spot_ok = all(b >= 0.46 for b in spots.values())
        try:
            bounds._solve_b_core(191.0, bounds.tail_smoothness_log(190))
            below_fails = False
        except NotApplicableError:
            below_fails = True
        ok = not bad and spot_ok and below_fails
        return ok, (
            f"b_k in (0,1/2) for k in [{k_lo},{k_hi}] "
            f"({len(bad)} violations); spot b(1e4)={spots[10**4]:.4f}, "
            f"b(2e4)={spots[2 * 10**4]:.4f}; k=190 not applicable: {below_fails}"
        )

    return _timed("b-range", run)


def check_lemma_sqrt2n(n_max: int = 10**5) -> VerifyResult:
    """P(n) <= sqrt(2n) for every enumerated pnd <= n_max."""

    def run():
        vals = pnd_values(1, n_max)
        pmax = largest_prime_factors(vals)
        ok_mask = pmax.astype(np.float64) ** 2 <= 2.0 * vals.astype(np.float64)
        # exact re-check on anything float-marginal
        exact_ok = all(int(p) ** 2 <= 2 * int(n) for p, n in zip(pmax, vals))
        return bool(ok_mask.all() and exact_ok), f"{vals.size} pnds <= {n_max} checked"

    return _timed("lemma-sqrt2n", run)


def check_golomb(y_max: int = 10**6) -> VerifyResult:
    """-3 y^(1/3) <= K(y) - 2 lambda sqrt(y) <= 0 on decades up to y_max."""
    from pndsum.arith import count_squarefull

    def run():
        lam_lo, lam_hi = bounds.lambda_bracket()
        rows = []
        ok = True
        y = 1000
        while y <= y_max:
            k = count_squarefull(y)
            upper_ok = k - 2 * lam_lo * sqrt(y) <= 0
            lower_ok = k - 2 * lam_hi * sqrt(y) >= -3 * y ** (1 / 3)
            ok = ok and upper_ok and lower_ok
            rows.append(f"K({y})={k}")
            y *= 10
        return ok, "; ".join(rows)

    return _timed("golomb", run)


def check_domination(n_max: int = 10**6) -> VerifyResult:
    """Counting and reciprocal bounds dominate enumerated truth."""

    def run():
        details = []
        ok = True

        vals = pnd_values(1, min(n_max, 10**6))
        sf = np.array([squarefull_decompose(factorize(int(n)))[0] for n in vals])
        count_sf = int((sf >= 100).sum())
        b_bound = bounds.bound_B(1e6, 100.0)
        ok &= b_bound >= count_sf
        details.append(f"B(1e6,1e2)={b_bound:.0f} >= {count_sf}")

        vals_m = pnd_values(1, n_max)
        pmax = largest_prime_factors(vals_m)
        count_p = int((pmax > 1000).sum())
        m_bound = bounds.bound_M(float(n_max), 1000.0)
        ok &= m_bound >= count_p
        details.append(f"M({n_max:.0e},1e3)={m_bound:.3e} >= {count_p}")

        band_vals = pnd_values(10**6, 10**7)
        band_p = largest_prime_factors(band_vals)
        sel = band_vals[band_p > 1000]
        recip = float(np.sum(1.0 / sel.astype(np.float64))) if sel.size else 0.0
        band_bound = bounds.bound_recip_band(1e6, 1e7, 1000.0)
        ok &= band_bound >= recip
        details.append(f"band(1e6,1e7,1e3)={band_bound:.4f} >= {recip:.6f}")

        lo, hi = naive_smooth_recip_tail(10**6, 30)
        rk = bounds.rankin_smooth_bound(log(1e6), 30.0, 0.041, 0.35, min_u=4.0)
        ok &= rk >= hi
        details.append(f"rankin(1e6,30)={rk:.3f} >= smooth tail {hi:.6f}")

        return bool(ok), "; ".join(details)

    return _timed("domination", run)


def check_oracle_equal(n_max: int = 10**6) -> VerifyResult:
    """Fast enumerator output equals the definition-level oracle list."""

    def run():
        t0 = time.perf_counter()
        fast = pnd_values(1, n_max).tolist()
        t_fast = time.perf_counter() - t0
        t0 = time.perf_counter()
        slow = naive_pnd_list(n_max)
        t_slow = time.perf_counter() - t0
        return fast == slow, (
            f"{len(fast)} pnds <= {n_max}; fast {t_fast:.2f}s, oracle {t_slow:.2f}s"
        )

    return _timed("oracle-equal", run)


def check_antichain(n_max: int = 10**6) -> VerifyResult:
    """No enumerated pnd divides another (divisibility antichain)."""

    def run():
        vals = pnd_values(1, n_max).tolist()
        member = np.zeros(n_max + 1, dtype=bool)
        for v in vals:
            member[v] = True
        for v in vals:
            for m in range(2 * v, n_max + 1, v):
                if member[m]:
                    return False, f"{v} divides {m}, both enumerated"
        return True, f"antichain of {len(vals)} pnds <= {n_max}"

    return _timed("antichain", run)


def check_cover(n_max: int = 10**5) -> VerifyResult:
    """Every nondeficient n <= n_max has an enumerated pnd divisor."""

    def run():
        sig = sigma_table(n_max)
        idx = np.arange(n_max + 1, dtype=np.int64)
        nondef = (sig >= 2 * idx) & (idx >= 1)
        covered = np.zeros(n_max + 1, dtype=bool)
        for v in pnd_values(1, n_max).tolist():
            covered[v::v] = True
        missing = np.nonzero(nondef & ~covered)[0]
        return missing.size == 0, (
            f"{int(nondef.sum())} nondeficient n <= {n_max} all covered"
            if missing.size == 0
            else f"uncovered nondeficient n: {missing[:5].tolist()}"
        )

    return _timed("cover", run)


def check_smooth_const() -> VerifyResult:
    """Remainder sum of the smooth bound's additive constant stays <= 0.35."""

    def run():
        r = bounds.smooth_series_remainder(0.041, 10**6)
        return r <= 0.35, f"sum_p [-ln(1-p^(s-1)) - p^(s-1)] + tail = {r:.6f} at s=0.041"

    return _timed("smooth-const", run)


def check_residual(n_points: int = 200) -> VerifyResult:
    """Defining-equation residual of solve_b below 1e-12 relative on a grid."""

    def run():
        rng = np.random.default_rng(20180212)
        worst = 0.0
        for _ in range(n_points):
            ln_y = rng.uniform(2.2, 200.0)
            log_x = ln_y * rng.uniform(1.5, 40.0)
            try:
                b = bounds._solve_b_core(log_x, ln_y)
            except NotApplicableError:
                continue
            lhs = np.exp(-b * ln_y)
            t = 2 * log_x * np.log1p(np.sqrt(2.0) * np.exp(-ln_y / 2)) / (ln_y - log(2))
            rhs = -2.0 * np.expm1(-t)
            worst = max(worst, abs(lhs - rhs) / rhs)
        return worst < 1e-12, f"worst relative residual {worst:.2e} over grid"

    return _timed("residual", run)


def check_determinism(
    n_max: int = 10**7,
    segment_sizes=(10**5, 10**6, 10**7),
    thread_counts=(1, 4, 8),
) -> VerifyResult:
    """count and compensated sum bit-identical across segmentations/threads."""

    def run():
        results = set()
        runs = 0
        for size in segment_sizes:
            for threads in thread_counts:
                cp = enumerate_range(1, n_max, segment_size=size, threads=threads)
                results.add((cp.pnd_count, cp.recip_acc))
                runs += 1
        ok = len(results) == 1
        count, acc = next(iter(results))
        pair = None
        if ok:
            from pndsum.enumeration import fixed_to_pair

            pair = fixed_to_pair(acc)
        return ok, (
            f"{runs} runs to {n_max}: {'all identical' if ok else f'{len(results)} distinct results'}"
            + (f"; count={count}, sum={pair[0]!r}" if ok else "")
        )

    return _timed("determinism", run)


SUITES = {
    "b-range": lambda **kw: check_b_range(),
    "lemma-sqrt2n": lambda **kw: check_lemma_sqrt2n(kw.get("n_max") or 10**5),
    "golomb": lambda **kw: check_golomb(kw.get("y") or 10**6),
    "domination": lambda **kw: check_domination(kw.get("n_max") or 10**6),
    "oracle-equal": lambda **kw: check_oracle_equal(kw.get("n_max") or 10**6),
    "antichain": lambda **kw: check_antichain(kw.get("n_max") or 10**6),
    "cover": lambda **kw: check_cover(kw.get("n_max") or 10**5),
    "smooth-const": lambda **kw: check_smooth_const(),
    "residual": lambda **kw: check_residual(),
    "determinism": lambda **kw: check_determinism(kw.get("n_max") or 10**7),
}
