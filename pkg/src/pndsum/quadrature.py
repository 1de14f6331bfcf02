"""Certified-upper-bound numerical integration.

Integrands come from a closed catalog of shapes (symbolic id plus
parameters) rather than arbitrary callbacks, which keeps the
certification contract auditable: every shape is positive on the domains
used, and the improper-integral tails are closed by analytic envelope
bounds (incomplete-gamma peeling for exponential envelopes, exact power
tails for monomials).

The finite-interval rule is adaptive Simpson with interval-halving error
estimates; reported error bounds carry a conservative factor 2 on the
Richardson estimate. This is the certification policy, not a formal
proof of enclosure; the test suite checks domination against much finer
fixed grids and extended-precision recomputation for every shape the
bound chain uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from pndsum.errors import QuadratureError, ValidationError

ERROR_FLOOR = 1e-300  # never claim tighter than this
MAX_DEPTH = 40


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_bound: float

    def __post_init__(self):
        if self.error_bound < 0:
            raise ValueError("error_bound must be >= 0")

    @property
    def upper_value(self) -> float:
        return self.value + self.error_bound


@dataclass(frozen=True)
class Integrand:
    """One member of the closed integrand catalog.

    shapes:
      monomial(c, p)            c * t**p
      recip_log()               1 / ln t            (t > 1)
      shifted_quartic(a, alpha) (t + a)**4 * t**(-alpha)
      exp_power(c, beta)        exp(-c * t**beta)
      exp_ratio_log(c)          exp(-t / (c * ln t))
      exp_sqrt_tlog()           exp(-sqrt(t * ln t))
    """

    shape: str
    params: tuple[float, ...] = ()

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        if self.shape == "monomial":
            c, p = self.params
            return c * t**p
        if self.shape == "recip_log":
            return 1.0 / np.log(t)
        if self.shape == "shifted_quartic":
            a, alpha = self.params
            return (t + a) ** 4 * t ** (-alpha)
        if self.shape == "exp_power":
            c, beta = self.params
            return np.exp(-c * t**beta)
        if self.shape == "exp_ratio_log":
            (c,) = self.params
            return np.exp(-t / (c * np.log(t)))
        if self.shape == "exp_sqrt_tlog":
            return np.exp(-np.sqrt(t * np.log(t)))
        raise ValidationError(f"unknown integrand shape {self.shape!r}")

    def at(self, t: float) -> float:
        return float(self(np.array([t]))[0])


def monomial(c: float, p: float) -> Integrand:
    return Integrand("monomial", (c, p))


def recip_log() -> Integrand:
    return Integrand("recip_log")


def shifted_quartic(a: float, alpha: float) -> Integrand:
    return Integrand("shifted_quartic", (a, alpha))


def exp_power(c: float, beta: float) -> Integrand:
    return Integrand("exp_power", (c, beta))


def exp_ratio_log(c: float) -> Integrand:
    return Integrand("exp_ratio_log", (c,))


def exp_sqrt_tlog() -> Integrand:
    return Integrand("exp_sqrt_tlog")


def integrate_finite(
    f: Integrand,
    a: float,
    b: float,
    *,
    rel_tol: float = 1e-10,
    abs_tol: float = 0.0,
    regularity: str = "smooth",
) -> QuadratureResult:
    """Adaptive Simpson on [a, b], error estimated by interval halving.

    `regularity` records the caller's contract ('monotone' or 'smooth' =
    bounded second differences); monotone claims are spot-checked.
    """
    if not a < b:
        raise ValidationError(f"need a < b, got [{a}, {b}]")
    if regularity not in ("monotone", "smooth"):
        raise ValidationError(f"unknown regularity flag {regularity!r}")
    if regularity == "monotone":
        ts = np.linspace(a, b, 33)
        vals = f(ts)
        diffs = np.diff(vals)
        if not ((diffs <= 1e-12).all() or (diffs >= -1e-12).all()):
            raise ValidationError("integrand fails the declared monotonicity at samples")

    span = b - a
    x0 = np.array([a])
    x2 = np.array([b])
    x1 = (x0 + x2) / 2
    f0, f1, f2 = f(x0), f(x1), f(x2)

    value_parts: list[float] = []
    err_parts: list[float] = []
    for _ in range(MAX_DEPTH):
        m01 = (x0 + x1) / 2
        m12 = (x1 + x2) / 2
        f01 = f(m01)
        f12 = f(m12)
        h = x2 - x0
        s1 = h / 6 * (f0 + 4 * f1 + f2)
        s2 = h / 12 * (f0 + 4 * f01 + 2 * f1 + 4 * f12 + f2)
        delta = s2 - s1
        # tolerance re-anchored to the running estimate, split by length
        estimate = math.fsum(value_parts) + float(np.sum(s2))
        tol = max(abs_tol, rel_tol * abs(estimate), 1e-305)
        ok = np.abs(delta) <= 15 * tol * (h / span)
        if ok.any():
            value_parts.append(float(np.sum(s2[ok] + delta[ok] / 15)))
            err_parts.append(float(np.sum(2 * np.abs(delta[ok]) / 15)))
        rest = ~ok
        if not rest.any():
            value = math.fsum(value_parts)
            err = max(math.fsum(err_parts), ERROR_FLOOR)
            return QuadratureResult(value, err)
        x0, x1, x2 = (
            np.concatenate([x0[rest], x1[rest]]),
            np.concatenate([m01[rest], m12[rest]]),
            np.concatenate([x1[rest], x2[rest]]),
        )
        f0, f1, f2 = (
            np.concatenate([f0[rest], f1[rest]]),
            np.concatenate([f01[rest], f12[rest]]),
            np.concatenate([f1[rest], f2[rest]]),
        )
    raise QuadratureError(
        f"no convergence after {MAX_DEPTH} halvings on [{a}, {b}]: "
        f"{x0.size} intervals open, worst |delta|={float(np.max(np.abs(delta))):.3e}, "
        f"tol={tol:.3e}"
    )


def gamma_upper_tail_bound(a: float, x: float) -> float:
    """Upper bound for the upper incomplete gamma Gamma(a, x), x > 0.

    Peels integer steps of the recurrence Gamma(a,x) = x^(a-1) e^-x
    + (a-1) Gamma(a-1,x) until a <= 1, where Gamma(a,x) <= x^(a-1) e^-x.
    """
    if x <= 0:
        raise ValidationError("x must be positive")
    total = 0.0
    coef = 1.0
    while a > 1:
        total += coef * math.exp((a - 1) * math.log(x) - x)
        coef *= a - 1
        a -= 1
    total += coef * math.exp((a - 1) * math.log(x) - x)
    return total * (1 + 1e-9)  # directed-rounding slack over the exact peeling


def envelope_tail_upper(envelope: Integrand, cutoff: float) -> float:
    """Closed-form upper bound for the integral of the envelope on [cutoff, inf)."""
    if envelope.shape == "exp_power":
        c, beta = envelope.params
        if c <= 0 or beta <= 0:
            raise ValidationError("exp_power envelope needs c, beta > 0")
        return (1 / beta) * c ** (-1 / beta) * gamma_upper_tail_bound(1 / beta, c * cutoff**beta)
    if envelope.shape == "monomial":
        c, p = envelope.params
        if p >= -1:
            raise ValidationError("monomial envelope needs exponent < -1")
        return c * cutoff ** (p + 1) / (-p - 1)
    raise ValidationError(f"no closed tail for envelope shape {envelope.shape!r}")


def _check_envelope(f: Integrand, envelope: Integrand, cutoff: float) -> None:
    ts = np.geomspace(cutoff, cutoff * 1e6, 64)
    fv = f(ts)
    ev = envelope(ts)
    if not (fv <= ev * (1 + 1e-9) + 1e-300).all():
        worst = int(np.argmax(fv - ev))
        raise ValidationError(
            f"envelope invalid: f({ts[worst]:.6g}) = {fv[worst]:.6g} exceeds "
            f"envelope value {ev[worst]:.6g}"
        )


def integrate_decreasing_to_inf(
    f: Integrand,
    a: float,
    *,
    envelope: Integrand,
    cutoff: float,
    rel_tol: float = 1e-10,
) -> QuadratureResult:
    """Integral of a positive, eventually-decreasing f over [a, inf).

    Finite part by adaptive Simpson on [a, cutoff]; tail closed by the
    caller-supplied dominating envelope, whose validity is sampled on
    [cutoff, cutoff*1e6].
    """
    if not a < cutoff:
        raise ValidationError("cutoff must exceed the lower limit")
    ts = np.unique(
        np.concatenate([np.linspace(a, cutoff, 32), np.geomspace(max(a, 1e-6), cutoff, 96)])
    )
    vals = f(ts)
    if (vals < 0).any():
        raise ValidationError("integrand must be positive")
    if not (np.diff(vals) <= 1e-12 * np.abs(vals[:-1]) + 1e-300).all():
        raise ValidationError("integrand fails the decreasing contract at samples")
    _check_envelope(f, envelope, cutoff)
    finite = integrate_finite(f, a, cutoff, rel_tol=rel_tol)
    tail = envelope_tail_upper(envelope, cutoff)
    return QuadratureResult(finite.value + tail, finite.error_bound)


def series_upper_by_integral(
    g: Integrand,
    k0: int,
    *,
    envelope: Integrand,
    cutoff: float,
    rel_tol: float = 1e-10,
) -> float:
    """Upper bound g(k0) + integral_{k0}^inf g(t) dt for sum_{k>=k0} g(k).

    Requires g positive and decreasing on [k0, inf); spot-checked on
    integer samples near k0 and geometrically out to the cutoff.
    """
    ks = np.unique(
        np.concatenate(
            [
                np.arange(k0, k0 + 32, dtype=np.float64),
                np.geomspace(max(k0, 1.0), cutoff, 64),
            ]
        )
    )
    vals = g(ks)
    if (vals < 0).any() or not (np.diff(vals) <= 1e-12 * np.abs(vals[:-1]) + 1e-300).all():
        raise ValidationError("series term fails the positive-decreasing contract at samples")
    integral = integrate_decreasing_to_inf(g, k0, envelope=envelope, cutoff=cutoff, rel_tol=rel_tol)
    return g.at(float(k0)) + integral.upper_value
