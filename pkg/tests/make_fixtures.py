#!/usr/bin/env python3
"""Regenerate tests/fixtures.json from the definition-level oracles.

Run from the repository root:  python tests/make_fixtures.py
Every value in the fixtures file is produced here, by oracle code only;
the fast paths are tested against the frozen output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import isqrt
from pathlib import Path

import numpy as np

from pndsum.oracle import (
    naive_pnd_list,
    naive_sigma,
    naive_smooth_recip_tail,
    sigma_table,
)


def trial_division_factors(n: int) -> list[list[int]]:
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append([d, e])
        d += 1
    if n > 1:
        out.append([n, 1])
    return out


def squarefull_count_double_loop(y: int) -> int:
    mark = np.zeros(y + 1, dtype=bool)
    a = 1
    while a * a <= y:
        b = 1
        while a * a * b * b * b <= y:
            mark[a * a * b * b * b] = True
            b += 1
        a += 1
    return int(mark[1:].sum())


def divisor_sums(values) -> dict[str, int]:
    return {str(n): naive_sigma(n) for n in values}


def pnd_recip_fraction(pnds) -> dict[str, str]:
    total = Fraction(0)
    for n in pnds:
        total += Fraction(1, n)
    return {"num": str(total.numerator), "den": str(total.denominator)}


def fine_trapezoid_li(x: float, panels: int = 10**7) -> float:
    t = np.linspace(2.0, x, panels + 1)
    f = 1.0 / np.log(t)
    h = (x - 2.0) / panels
    return float(h * (f.sum() - (f[0] + f[-1]) / 2))


def main():
    fixtures = {}

    fixtures["factorize"] = {
        "12": trial_division_factors(12),
        "97": trial_division_factors(97),
        "720": trial_division_factors(720),
    }
    fixtures["naive_sigma"] = divisor_sums([1, 6, 20, 28, 496, 8, 12])

    fixtures["count_squarefull"] = {
        "50": squarefull_count_double_loop(50),
        "1000": squarefull_count_double_loop(1000),
        "1000000": squarefull_count_double_loop(10**6),
    }

    pnds_1000 = naive_pnd_list(1000)
    pnds_2e6 = naive_pnd_list(2 * 10**6)
    pnds_1e6 = [n for n in pnds_2e6 if n <= 10**6]
    window = [n for n in pnds_2e6 if n > 10**6]
    fixtures["pnd"] = {
        "upto_30": [n for n in pnds_1000 if n <= 30],
        "upto_100": [n for n in pnds_1000 if n <= 100],
        "upto_1000": pnds_1000,
        "count_1e6": len(pnds_1e6),
        "largest_1e6": pnds_1e6[-1],
        "recip_1e6": pnd_recip_fraction(pnds_1e6),
        "recip_30": pnd_recip_fraction([n for n in pnds_1000 if n <= 30]),
        "window_1e6_2e6": {
            "count": len(window),
            "first": window[0],
            "last": window[-1],
            "recip": pnd_recip_fraction(window),
        },
    }

    lo5, hi5 = naive_smooth_recip_tail(10**6, 5)
    lo30, hi30 = naive_smooth_recip_tail(10**6, 30)
    fixtures["smooth_tail"] = {
        "x1e6_y5": {"lo": lo5, "hi": hi5},
        "x1e6_y30": {"lo": lo30, "hi": hi30},
    }

    fixtures["li_e2_trapezoid"] = fine_trapezoid_li(float(np.exp(2.0)))

    out = Path(__file__).parent / "fixtures.json"
    out.write_text(json.dumps(fixtures, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
