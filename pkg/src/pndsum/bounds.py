"""Explicit analytic bounds, as pure evaluators with upper-bound semantics.

Every evaluator returns a value that dominates the mathematical value of
its formula: directed rounding is approximated by a cheap (1 + 1e-9)
factor on results (1 - 1e-9 for the one lower bound here), quadrature
contributes its certified error bound, and the zeta values behind the
square-full density constant come with bracketed truncation error.
Interval arithmetic would be the rigorous upgrade; the test suite checks
the slack policy against extended-precision recomputation instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import exp, expm1, log, log1p, sqrt

import numpy as np

from pndsum.constants import ConstantsBundle, load_constants
from pndsum.errors import NotApplicableError, ValidationError
from pndsum.quadrature import (
    exp_power,
    exp_ratio_log,
    exp_sqrt_tlog,
    integrate_decreasing_to_inf,
    integrate_finite,
    monomial,
    recip_log,
    series_upper_by_integral,
    shifted_quartic,
)
from pndsum.report import BoundReport, ceil_at

LN2 = log(2.0)
LN8 = log(8.0)

UPPER_NUDGE = 1e-9
_slack_enabled = True


def set_slack_enabled(flag: bool) -> None:
    """Toggle the directed-rounding surrogate (CLI slack policy switch)."""
    global _slack_enabled
    _slack_enabled = bool(flag)


def _upper(v: float) -> float:
    return v * (1 + UPPER_NUDGE) if _slack_enabled else v


def _lower(v: float) -> float:
    return v * (1 - UPPER_NUDGE) if _slack_enabled else v


# ------------------------------------------------------------- zeta / lambda


def zeta_bracket(s: float, n_terms: int = 10**4) -> tuple[float, float]:
    """[lo, hi] enclosing zeta(s), s > 1, by direct series.

    Partial sum plus the Euler-Maclaurin tail through the B2 term; the
    first omitted term bounds the truncation error for the completely
    monotone integrand t^-s. A 5e-15 cushion absorbs float rounding of
    the fsum'd partial sum.
    """
    if s <= 1:
        raise ValidationError("zeta series needs s > 1")
    n = n_terms
    ks = np.arange(1, n + 1, dtype=np.float64)
    partial = math.fsum((ks**-s).tolist())
    core = partial + n ** (1 - s) / (s - 1) - n**-s / 2 + s * n ** (-s - 1) / 12
    rmax = s * (s + 1) * (s + 2) * n ** (-s - 3) / 720 + 5e-15
    return core - rmax, core + rmax


@lru_cache(maxsize=None)
def lambda_bracket() -> tuple[float, float]:
    """[lo, hi] for the square-full density constant zeta(3/2)/(2 zeta(3))."""
    z32_lo, z32_hi = zeta_bracket(1.5)
    z3_lo, z3_hi = zeta_bracket(3.0)
    return z32_lo / (2 * z3_hi), z32_hi / (2 * z3_lo)


def lambda_const() -> float:
    """The square-full density constant, rounded up (upper-bound semantics)."""
    return lambda_bracket()[1]


@lru_cache(maxsize=None)
def default_constants() -> ConstantsBundle:
    return load_constants(lambda_value=lambda_const())


def _bundle(constants: ConstantsBundle | None) -> ConstantsBundle:
    return constants if constants is not None else default_constants()


# ------------------------------------------------------------------- li


def li_between(a: float, b: float, upper: bool = False) -> float:
    """Integral of dt/ln t from a to b, 1 < a <= b (signed form of Li).

    Arguments may lie in (1, 2); the integrand is evaluated directly there
    (needed for the smooth bound, where 2^s and y^s sit just above 1).
    """
    if not 1 < a <= b:
        raise ValidationError(f"need 1 < a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0
    res = integrate_finite(recip_log(), a, b, rel_tol=1e-12)
    return res.upper_value if upper else res.value


def li(x: float, upper: bool = False) -> float:
    """Li(x) = integral of dt/ln t from 2 to x, certified by quadrature."""
    if x < 2:
        raise ValidationError("li is defined from 2; use li_between for (1, 2)")
    if x == 2:
        return 0.0
    return li_between(2.0, x, upper=upper)


# ---------------------------------------------------------------- exponent b


def _solve_b_core(log_x: float, ln_y: float, formal: bool = False) -> float:
    """b from y^-b = 2 - 2 (1 + sqrt(2/y))^(-2 log x / log(y/2)).

    Cancellation-safe: the inner difference is -2 expm1(-t) with
    t = 2 log x log1p(sqrt(2/y)) / log(y/2). `formal` admits b <= 0
    (rhs in [1, 2)), used only by the blow-up diagnostic.
    """
    if not ln_y > LN8:
        raise ValidationError(f"need y > 8 (ln y = {ln_y})")
    if not log_x > ln_y:
        raise ValidationError(f"need log x > log y ({log_x} <= {ln_y})")
    t = 2 * log_x * log1p(sqrt(2.0) * exp(-ln_y / 2)) / (ln_y - LN2)
    rhs = -2.0 * expm1(-t)
    hi = 2.0 if formal else 1.0
    if not 0.0 < rhs < hi:
        raise NotApplicableError(
            f"defining equation rhs = {rhs} outside (0, {hi}) at "
            f"log x = {log_x}, ln y = {ln_y}",
            rhs=rhs,
        )
    return -log(rhs) / ln_y


def solve_b(log_x: float, y: float) -> float:
    """Exponent b for the pair (x, y); NotApplicable when b would be <= 0."""
    return _solve_b_core(log_x, log(y))


def tail_smoothness_log(k: float) -> float:
    """ln y_k = k / (4 ln k), the tail-range smoothness cutoff."""
    return k / (4 * log(k))


# ----------------------------------------------------------------- parameters


@dataclass(frozen=True)
class BoundParams:
    """The analytic knobs for one bound evaluation."""

    log_x: float
    y: float
    u: float
    s: float
    b: float
    valid_b: bool

    def __post_init__(self):
        if self.log_x <= 0 or self.y <= 1:
            raise ValidationError("need log_x > 0 and y > 1")
        u_check = self.log_x / log(self.y)
        if abs(self.u - u_check) > 1e-12 * abs(self.u):
            raise ValidationError(f"u = {self.u} inconsistent with log_x/ln y = {u_check}")
        if not 0 < self.s <= 0.041:
            raise ValidationError(f"s = {self.s} outside (0, 0.041]")
        if self.valid_b != (0 < self.b < 0.5):
            raise ValidationError("valid_b flag inconsistent with b")


# ------------------------------------------------------------ counting bounds


def bound_B(x: float, y: float) -> float:
    """Upper bound for the count of pnds n <= x with square-full part >= y."""
    if not x > y > 8:
        raise ValidationError(f"need x > y > 8, got x={x}, y={y}")
    lam = lambda_const()
    return _upper(lam * x * y**-0.5 + 2 * x * y ** (-2 / 3))


def bound_M(x: float, y: float) -> float:
    """Upper bound for the count of pnds n <= x with P(n) > y.

    NotApplicable when the defining equation puts b outside (0, 1/2).
    """
    if not x > y > 8:
        raise ValidationError(f"need x > y > 8, got x={x}, y={y}")
    b = solve_b(log(x), y)
    if not 0 < b < 0.5:
        raise NotApplicableError(f"b = {b} outside (0, 1/2) at x={x}, y={y}")
    lam = lambda_const()
    return _upper((lam + 1) * x * y ** (-b / 3) + 2 * x * y ** (-4 * b / 9))


def bound_recip_band(x1: float, x2: float, y: float) -> float:
    """Upper bound for sum of 1/n over pnds in [x1, x2] with P(n) > y.

    b is taken at the x2 endpoint: the single constant of the band bound
    must be valid across [x1, x2], and the top of the band is the
    conservative choice.
    """
    if not (8 < y < x1 <= x2):
        raise ValidationError(f"need 8 < y < x1 <= x2, got y={y}, x1={x1}, x2={x2}")
    return bound_recip_band_log(log(x1), log(x2), log(y))


def bound_recip_band_log(log_x1: float, log_x2: float, ln_y: float) -> float:
    """Log-space form of bound_recip_band, for bands beyond float range
    (the tail applies it at x of order e^5000)."""
    if not (LN8 < ln_y < log_x1 <= log_x2):
        raise ValidationError(
            f"need ln 8 < ln y < log x1 <= log x2, got {ln_y}, {log_x1}, {log_x2}"
        )
    b = _solve_b_core(log_x2, ln_y)
    if not 0 < b < 0.5:
        raise NotApplicableError(f"b = {b} outside (0, 1/2) at log x2={log_x2}")
    lam = lambda_const()
    bracket = (lam + 1) * exp(-ln_y * b / 3) + 2 * exp(-ln_y * 4 * b / 9)
    return _upper((1 + (log_x2 - log_x1)) * bracket)


# ---------------------------------------------------------------- smooth side


def rankin_smooth_bound(
    log_x: float,
    y: float,
    s: float,
    additive_const: float,
    *,
    min_u: float = 10.0,
    constants: ConstantsBundle | None = None,
) -> float:
    """Upper bound for sum of 1/n over y-smooth n > x (Rankin's method).

    min_u guards the documented u >= 10 hypothesis; callers operating the
    published parameterization below it (u reaches 8.2 at the bottom of
    the intermediate range) must lower the floor explicitly.
    """
    c = _bundle(constants)
    if not 0 < s <= 0.041:
        raise ValidationError(f"s = {s} outside (0, 0.041]")
    if y < 2:
        raise ValidationError("need y >= 2")
    u = log_x / log(y)
    if u < min_u:
        raise ValidationError(f"u = {u:.4f} below the required floor {min_u}")
    li_diff = li_between(2.0**s, y**s, upper=True)
    exponent = -s * log_x + (1 + c.eps_theta) * (li_diff + 2.0**s / LN2) + additive_const
    return _upper(exp(exponent))


def smooth_series_remainder(
    s: float = 0.041, prime_cap: int = 10**6
) -> float:
    """sum over p of [-ln(1 - p^(s-1)) - p^(s-1)], primes to cap plus tail.

    The additive constant of the smooth bound asserts this stays <= 0.35
    for s <= 0.041. Tail over p > cap bounded by sum n^(2s-2) <=
    cap^(2s-1)/(1-2s), each remainder term being < p^(2(s-1)).
    """
    from pndsum.arith import primes_up_to

    if not 0 < s <= 0.041:
        raise ValidationError(f"s = {s} outside (0, 0.041]")
    ps = primes_up_to(prime_cap).astype(np.float64)
    x = ps ** (s - 1)
    terms = -np.log1p(-x) - x
    head = math.fsum(terms.tolist())
    tail = prime_cap ** (2 * s - 1) / (1 - 2 * s)
    return _upper(head + tail)


# ------------------------------------------------------------- density bridge


def mertens_lower(x: float, constants: ConstantsBundle | None = None) -> float:
    """Lower bound e^-gamma / (ln x + 1/(2 ln^3 x)) for the Mertens product.

    Valid for x >= 286 (threshold of the classical explicit estimate).
    This is the one lower-bound evaluator: slack rounds it down.
    """
    c = _bundle(constants)
    if x < 286:
        raise ValidationError("the explicit Mertens-product estimate requires x >= 286")
    lx = log(x)
    return _lower(exp(-c.gamma) / (lx + 1 / (2 * lx**3)))


def mertens_lower_classic(x: float, constants: ConstantsBundle | None = None) -> float:
    """The classical explicit lower bound e^-gamma / (ln x + 1/(2 ln x)).

    Valid (and tight) from x = 286 on; kept alongside mertens_lower
    because the latter's published denominator reading fails to sit
    under the product at every computable scale.
    """
    c = _bundle(constants)
    if x < 286:
        raise ValidationError("the explicit Mertens-product estimate requires x >= 286")
    lx = log(x)
    return _lower(exp(-c.gamma) / (lx + 1 / (2 * lx)))


def bridge_forms(
    log2x: float, constants: ConstantsBundle | None = None
) -> tuple[float, float]:
    """Both displayed forms of the abundant-density bridge bound.

    Returns (coef * e^gamma * (L/2 + 4/L^3), 3.835e-5 * L) with
    L = ln(2x) and coef = delta_hi - kobayashi_partial; the headline
    assembly uses the second.
    """
    c = _bundle(constants)
    if log2x < 2 * log(286.0):
        raise ValidationError("bridge bound requires x >= 286^2/2")
    coef = c.delta_hi - c.kobayashi_partial
    f1 = coef * exp(c.gamma) * (log2x / 2 + 4 / log2x**3)
    f2 = 3.835e-5 * log2x
    return _upper(f1), _upper(f2)


def bridge_bound(log2x: float, constants: ConstantsBundle | None = None) -> float:
    """min of the two bridge forms (both are valid upper bounds)."""
    f1, f2 = bridge_forms(log2x, constants)
    return min(f1, f2)


# ------------------------------------------------------------------ tail range


@dataclass(frozen=True)
class TailCaseTwo:
    direct_sum: float  # sum over k in [5000, 10^4], before doubling
    integral_upper: float  # integral of exp(-t^0.4) over [10^4, inf)
    value: float


@dataclass(frozen=True)
class TailBounds:
    case_i: float
    case_ii: TailCaseTwo
    case_iii: float

    @property
    def total(self) -> float:
        return self.case_i + self.case_ii.value + self.case_iii


def tail_case_i() -> float:
    """Reciprocal tail from pnds past e^5000 with many prime factors.

    (1/24) sum_{k>=5000} (k+5)^4 / k^(4 ln 4), closed by the integral
    comparison for a decreasing term.
    """
    alpha = 4 * log(4.0)
    cutoff = 1e7
    g = shifted_quartic(5.0, alpha)
    envelope = monomial((1 + 5 / cutoff) ** 4, 4 - alpha)
    s = series_upper_by_integral(g, 5000, envelope=envelope, cutoff=cutoff)
    return _upper(s / 24)


def _tail_bracket_term(k: int, lam: float) -> float:
    """(lam+1) y_k^(-b/3) + 2 y_k^(-4b/9) at the tail parameterization."""
    ln_y = tail_smoothness_log(k)
    b = _solve_b_core(k + 1.0, ln_y)
    if not 0 < b < 0.5:
        raise NotApplicableError(f"b_{k} = {b} outside (0, 1/2); tail chain invalid")
    return (lam + 1) * exp(-ln_y * b / 3) + 2 * exp(-ln_y * 4 * b / 9)


def tail_case_ii() -> TailCaseTwo:
    """Reciprocal tail from pnds past e^5000 with a large prime factor.

    Direct bracket sum for k in [5000, 10^4] (each b_k must land in
    (0, 1/2)), then 4.2 * integral of exp(-t^0.4) for the rest.
    """
    lam = lambda_const()
    direct = math.fsum(_tail_bracket_term(k, lam) for k in range(5000, 10**4 + 1))
    integral = integrate_decreasing_to_inf(
        exp_power(1.0, 0.4), 1e4, envelope=exp_power(1.0, 0.4), cutoff=2e5
    )
    value = _upper(2 * direct + 4.2 * integral.upper_value)
    return TailCaseTwo(direct_sum=direct, integral_upper=integral.upper_value, value=value)


def tail_case_iii() -> float:
    """Reciprocal tail from pnds past e^5000 with a large square-full part.

    2.1 * integral of exp(-t / (8 ln t)) from 5000, with upper slack; the
    exponential envelope exp(-3 t^0.4) closes the tail from 30000 (where
    t^0.6 >= 24 ln t holds).
    """
    integral = integrate_decreasing_to_inf(
        exp_ratio_log(8.0), 5000.0, envelope=exp_power(3.0, 0.4), cutoff=30000.0
    )
    return _upper(2.1 * integral.upper_value)


def tail_total() -> TailBounds:
    """All three tail cases; the total is their exact float sum."""
    return TailBounds(case_i=tail_case_i(), case_ii=tail_case_ii(), case_iii=tail_case_iii())


# ------------------------------------------------------------- middle range


@dataclass(frozen=True)
class IntermediateRow:
    k: int
    params: BoundParams
    nonsmooth_term: float
    smooth_term: float


@dataclass(frozen=True)
class IntermediateSum:
    nonsmooth: float
    smooth: float
    rows: tuple[IntermediateRow, ...] = field(repr=False)

    @property
    def total(self) -> float:
        return self.nonsmooth + self.smooth

    def __iter__(self):
        return iter((self.nonsmooth, self.smooth))


def intermediate_sum(
    k_min: int = 700,
    k_max: int = 5000,
    *,
    smooth_const: float = 0.35,
    u_floor: float = 8.19,
    constants: ConstantsBundle | None = None,
) -> IntermediateSum:
    """Reciprocal-sum bound over [e^700, e^5000], split per integer k.

    Per k: u = 0.006k + 4 fixes ln y = k/u; the nonsmooth column is the
    doubled band bracket with b at x = e^(k+1); the smooth column is the
    Rankin bound at s_k = ln(e^gamma u ln u)/ln y. Every k validates
    s_k <= 0.041 and b_k in (0, 1/2); u dips to 8.2 at k = 700 (the
    published parameterization runs below the u >= 10 hypothesis until
    k = 1000), so the hard floor here is u_floor.
    """
    if not 700 <= k_min <= k_max:
        raise ValidationError("need 700 <= k_min <= k_max")
    c = _bundle(constants)
    lam = lambda_const()
    rows = []
    for k in range(k_min, k_max + 1):
        u = 0.006 * k + 4
        if u < u_floor:
            raise ValidationError(f"k={k}: u = {u} below floor {u_floor}")
        ln_y = k / u
        s_k = log(exp(c.gamma) * u * log(u)) / ln_y
        if not 0 < s_k <= 0.041:
            raise ValidationError(f"k={k}: s_k = {s_k} outside (0, 0.041]")
        try:
            b = _solve_b_core(k + 1.0, ln_y)
        except NotApplicableError as exc:
            raise ValidationError(f"k={k}: defining equation not applicable ({exc})") from exc
        if not 0 < b < 0.5:
            raise ValidationError(f"k={k}: b = {b} outside (0, 1/2)")
        nonsmooth_k = 2 * ((lam + 1) * exp(-ln_y * b / 3) + 2 * exp(-ln_y * 4 * b / 9))
        smooth_k = rankin_smooth_bound(
            float(k), exp(ln_y), s_k, smooth_const, min_u=u_floor, constants=c
        )
        rows.append(
            IntermediateRow(
                k=k,
                params=BoundParams(
                    log_x=float(k), y=exp(ln_y), u=u, s=s_k, b=b, valid_b=0 < b < 0.5
                ),
                nonsmooth_term=nonsmooth_k,
                smooth_term=smooth_k,
            )
        )
    nonsmooth = _upper(math.fsum(r.nonsmooth_term for r in rows))
    smooth = _upper(math.fsum(r.smooth_term for r in rows))
    return IntermediateSum(nonsmooth=nonsmooth, smooth=smooth, rows=tuple(rows))


# ------------------------------------------------------------------ diagnostics


def heuristic_tail() -> float:
    """integral of exp(-sqrt(t ln t)) from 14 ln 10; informational only.

    Suggests the reciprocal tail past 1e14 is < 1.3e-4 under the
    heuristic count decay; never enters the assembly.
    """
    res = integrate_decreasing_to_inf(
        exp_sqrt_tlog(), 14 * log(10.0), envelope=exp_power(3.0, 0.5), cutoff=1e4
    )
    return _upper(res.upper_value)


def naive_nonsmooth_from_1e14(k_max: int = 10**4) -> float:
    """The blow-up diagnostic: the nonsmooth bracket summed from 1e14.

    Evaluates the bracket formally even where b <= 0 (k < 191), which is
    exactly why the value is of order 10^3: the distribution estimates
    alone are hopeless from 1e14, motivating the density bridge.
    """
    lam = lambda_const()
    k0 = math.ceil(14 * log(10.0))
    total = []
    for k in range(k0, k_max + 1):
        ln_y = tail_smoothness_log(k)
        b = _solve_b_core(k + 1.0, ln_y, formal=True)
        total.append((lam + 1) * exp(-ln_y * b / 3) + 2 * exp(-ln_y * 4 * b / 9))
    return _upper(math.fsum(total))


# -------------------------------------------------------------------- assembly


def assemble_upper(
    constants: ConstantsBundle | None = None,
    *,
    smooth_const: float = 0.35,
) -> BoundReport:
    """The full upper-bound tree, components presentation-rounded up at 1e-6.

    Addends: the partial sum to 4e10, the density bridge at x = e^700
    (headline linear form), the intermediate columns over [700, 5000],
    and the tail from e^5000.
    """
    c = _bundle(constants)
    log2x = 700.0 + LN2
    forms = bridge_forms(log2x, c)
    inter = intermediate_sum(smooth_const=smooth_const, constants=c)
    tail = tail_total()

    lower_leaf = BoundReport(
        name="lower-bound-1e14",
        value=c.silva_sum_1e14,
        formula_id="partial reciprocal sum over pnds <= 1e14 (external)",
        slack_note=c.provenance["silva_sum_1e14"],
        additive=False,
    )
    addends = [
        BoundReport(
            name="partial-sum-4e10",
            value=c.partial_sum_4e10,
            formula_id="partial reciprocal sum over pnds <= 4e10 (external)",
            slack_note=c.provenance["partial_sum_4e10"],
        ),
        BoundReport(
            name="bridge-4e10-e700",
            value=forms[1],
            formula_id="3.835e-5 * log(2x) at x = e^700",
            slack_note=f"headline linear form; product form gives {forms[0]!r}",
        ),
        BoundReport(
            name="intermediate-e700-e5000",
            value=inter.total,
            formula_id="sum over k in [700, 5000] of nonsmooth + smooth columns",
            slack_note=f"smooth additive constant {smooth_const}",
            children=[
                BoundReport(
                    name="intermediate-nonsmooth",
                    value=inter.nonsmooth,
                    formula_id="2[(lambda+1) y^(-b/3) + 2 y^(-4b/9)] summed over k",
                ),
                BoundReport(
                    name="intermediate-smooth",
                    value=inter.smooth,
                    formula_id="exp((1+eps)(Li(y^s)-Li(2^s)+2^s/ln 2) + const - s k) summed over k",
                ),
            ],
        ),
        BoundReport(
            name="tail-e5000",
            value=tail.total,
            formula_id="tail cases (i)+(ii)+(iii) past e^5000",
            children=[
                BoundReport(
                    name="tail-case-i",
                    value=tail.case_i,
                    formula_id="(1/24) sum (k+5)^4 k^(-4 ln 4), integral comparison",
                ),
                BoundReport(
                    name="tail-case-ii",
                    value=tail.case_ii.value,
                    formula_id="2 * direct bracket sum + 4.2 * integral exp(-t^0.4)",
                    slack_note=(
                        f"direct sum {tail.case_ii.direct_sum!r}, "
                        f"integral {tail.case_ii.integral_upper!r}"
                    ),
                ),
                BoundReport(
                    name="tail-case-iii",
                    value=tail.case_iii,
                    formula_id="2.1 * integral exp(-t/(8 ln t)) from 5000",
                ),
            ],
        ),
    ]
    rounded = [ceil_at(a.value, 6) for a in addends]
    upper_node = BoundReport(
        name="upper-bound",
        value=math.fsum(rounded),
        formula_id="sum of the four addends, each rounded up at the 6th decimal",
        slack_note="rounded addends: " + " + ".join(f"{r:.6f}" for r in rounded),
        children=addends,
    )
    root = BoundReport(
        name="erdos-constant-interval",
        value=upper_node.value,
        formula_id="reciprocal sum of pnds, proven interval",
        slack_note=f"interval ({c.silva_sum_1e14}, {upper_node.value:.6f})",
        children=[lower_leaf, upper_node],
        additive=False,
    )
    root.validate()
    return root
