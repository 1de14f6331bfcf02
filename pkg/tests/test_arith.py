import math


import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pndsum.arith import (
    Classification,
    FactoredInteger,
    classify,
    count_squarefull,
    factorize,
    is_prime,
    primes_up_to,
    sigma,
    squarefull_decompose,
)
from pndsum.bounds import lambda_bracket
from pndsum.oracle import sigma_table


def test_factorize_basics(fx):
    assert factorize(1).factors == ()
    assert [list(pe) for pe in factorize(12).factors] == fx["factorize"]["12"]
    assert [list(pe) for pe in factorize(97).factors] == fx["factorize"]["97"]
    assert [list(pe) for pe in factorize(720).factors] == fx["factorize"]["720"]


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(-6)


def test_factored_integer_invariants():
    FactoredInteger(6, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(6, ((3, 1), (2, 1)))  # primes must increase
    with pytest.raises(ValueError):
        FactoredInteger(6, ((2, 1),))  # product mismatch
    with pytest.raises(ValueError):
        FactoredInteger(8, ((8, 1),))  # 8 is not prime
    with pytest.raises(ValueError):
        FactoredInteger(4, ((2, 0), (2, 2)))  # exponent < 1
    with pytest.raises(ValueError):
        FactoredInteger(2**64, ((2, 64),))  # width


def test_largest_prime_and_omega():
    f = factorize(720)
    assert f.largest_prime == 5
    assert f.omega == 3
    assert factorize(1).largest_prime == 1
    assert factorize(1).omega == 0


def test_sigma_examples():
    assert sigma(factorize(1)) == 1
    assert sigma(factorize(6)) == 12
    assert sigma(factorize(20)) == 42
    assert sigma(factorize(28)) == 56
    assert sigma(factorize(496)) == 992


def test_classify_examples():
    assert classify(factorize(8)) is Classification.DEFICIENT
    assert classify(factorize(6)) is Classification.PERFECT
    assert classify(factorize(12)) is Classification.ABUNDANT


def test_classify_against_divisor_oracle():
    n_max = 10**5
    sig = sigma_table(n_max)
    for n in range(1, n_max + 1):
        f = factorize(n)
        assert sigma(f) == int(sig[n])
        got = classify(f)
        if sig[n] < 2 * n:
            assert got is Classification.DEFICIENT
        elif sig[n] == 2 * n:
            assert got is Classification.PERFECT
        else:
            assert got is Classification.ABUNDANT


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 10**5), st.integers(2, 10**5))
def test_sigma_multiplicative_on_coprime_pairs(a, b):
    g = math.gcd(a, b)
    a //= g  # reduce to a coprime pair
    if math.gcd(a, b) != 1 or a < 2:
        return
    assert sigma(factorize(a * b)) == sigma(factorize(a)) * sigma(factorize(b))


def test_squarefull_decompose_examples():
    assert squarefull_decompose(factorize(1)) == (1, 1)
    assert squarefull_decompose(factorize(12)) == (4, 3)
    assert squarefull_decompose(factorize(720)) == (144, 5)


def _radical_sieve(n_max: int) -> np.ndarray:
    rad = np.ones(n_max + 1, dtype=np.int64)
    for p in primes_up_to(n_max).tolist():
        rad[p::p] *= p
    return rad


def test_decomposition_property_to_1e6():
    # q(n) = product of primes p || n, independently by sieve; then
    # s = n/q must be square-full (rad(s)^2 | s) and coprime to q.
    n_max = 10**6
    q = np.ones(n_max + 1, dtype=np.int64)
    for p in primes_up_to(n_max).tolist():
        mult = np.arange(p, n_max + 1, p, dtype=np.int64)
        exactly_one = (mult // p) % p != 0
        q[mult[exactly_one]] *= p
    n = np.arange(n_max + 1, dtype=np.int64)
    s = np.ones(n_max + 1, dtype=np.int64)
    s[1:] = n[1:] // q[1:]
    assert (s[1:] * q[1:] == n[1:]).all()
    assert (np.gcd(s[1:], q[1:]) == 1).all()
    rad = _radical_sieve(n_max)
    rs = rad[s[1:]]
    assert (s[1:] % (rs * rs) == 0).all()
    # spot-compare the API against the sieve
    rng = np.random.default_rng(7)
    for m in rng.integers(1, n_max, 500).tolist() + [1, 4, 12, 720, 2**19, 999983]:
        assert squarefull_decompose(factorize(int(m))) == (int(s[m]), int(q[m]))


def test_count_squarefull_against_double_loop_oracle(fx):
    assert count_squarefull(1) == 1
    assert count_squarefull(50) == fx["count_squarefull"]["50"]
    assert count_squarefull(1000) == fx["count_squarefull"]["1000"]
    assert count_squarefull(10**6) == fx["count_squarefull"]["1000000"]


@pytest.mark.parametrize("y", [10**3, 10**4, 10**5, 10**6])
def test_golomb_bracket(y):
    lam_lo, lam_hi = lambda_bracket()
    k = count_squarefull(y)
    assert k - 2 * lam_lo * math.sqrt(y) <= 0
    assert k - 2 * lam_hi * math.sqrt(y) >= -3 * y ** (1 / 3)


def test_is_prime_matches_sieve():
    sieve = set(primes_up_to(10**4).tolist())
    for n in range(10**4):
        assert is_prime(n) == (n in sieve)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
