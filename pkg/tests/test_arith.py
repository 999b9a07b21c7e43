from __future__ import annotations

from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, strategies as st

from egyptfrac.arith import (ArithmeticDomainError, divisors, factorize, gcd, is_prime, lcm,
                             lcm_many, phi, primality_mode, sigma, tau)


def trial_division(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def test_gcd_examples():
    assert gcd(12, 18) == 6
    assert gcd(7, 1) == 1
    assert gcd(5, 17) == 1 and lcm(5, 17) == 85
    with pytest.raises(ArithmeticDomainError):
        gcd(0, 0)


def test_lcm_many_examples():
    assert lcm_many([1, 2, 21]) == 42
    assert lcm_many([9]) == 9
    assert lcm_many([2, 3, 4]) == 12 == 2 * 3 * 4 // gcd(gcd(6, 8), 12)
    for bad in ([], [0, 3], [-2]):
        with pytest.raises(ArithmeticDomainError):
            lcm_many(bad)


def test_is_prime_examples():
    assert is_prime(5569)
    assert not is_prime(1) and not is_prime(0)
    assert not is_prime(4095)
    # a strong pseudoprime to several small bases and a large prime
    assert not is_prime(3215031751)
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


def test_is_prime_beyond_the_deterministic_range():
    assert primality_mode(2**64) == "deterministic"
    assert primality_mode(2**89 - 1) == "probabilistic"
    assert is_prime(2**89 - 1) and is_prime(2**127 - 1)
    assert not is_prime(2**89 + 1) and not is_prime((2**61 - 1) * (2**89 - 1))


def test_is_prime_matches_sieve():
    limit = 20000
    sieve = [True] * (limit + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = [False] * len(sieve[i * i::i])
    assert [n for n in range(limit + 1) if is_prime(n)] == [n for n in range(limit + 1) if sieve[n]]


def test_factorize_examples():
    assert factorize(451) == {11: 1, 41: 1}
    assert factorize(1) == {}
    assert factorize(144) == {2: 4, 3: 2}
    with pytest.raises(ArithmeticDomainError):
        factorize(0)


def test_factorize_reconstructs_small_range():
    for n in range(1, 10**5 + 1, 7):
        f = factorize(n)
        assert prod(p**e for p, e in f.items()) == n
        assert list(f) == sorted(f) and all(is_prime(p) and e >= 1 for p, e in f.items())


@given(st.integers(2, 10**6), st.integers(2, 10**6))
def test_factorize_large_products(a, b):
    n = a * b * 1000003
    f = factorize(n)
    assert prod(p**e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)


def test_divisors_examples():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(101) == [1, 101]
    assert len(divisors(144)) == 15 == tau(144)
    with pytest.raises(ArithmeticDomainError):
        divisors(0)


def test_tau_sigma_phi_examples():
    assert tau(144) == 15
    assert sigma(3) == 4
    assert all(phi(p) == p - 1 for p in (2, 3, 5, 7, 5569))
    for fn in (tau, sigma, phi):
        with pytest.raises(ArithmeticDomainError):
            fn(0)


def test_divisor_functions_match_scans():
    for n in range(1, 3001):
        ds = [d for d in range(1, n + 1) if n % d == 0]
        assert divisors(n) == ds
        assert tau(n) == len(ds)
        assert sigma(n) == sum(ds)
        assert phi(n) == sum(1 for i in range(1, n + 1) if gcd(i, n) == 1)
        assert factorize(n) == trial_division(n)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_gcd_lcm_product(a, b):
    assert gcd(a, b) * lcm(a, b) == a * b


@given(st.integers(1, 10**4), st.integers(1, 10**4), st.integers(1, 10**4))
def test_lcm_of_three(a, b, c):
    assert lcm_many([a, b, c]) * gcd(gcd(a * b, a * c), b * c) == a * b * c


@given(st.integers(1, 10**4), st.integers(1, 10**4))
def test_multiplicative_on_coprime(a, b):
    if gcd(a, b) == 1:
        for fn in (tau, sigma, phi):
            assert fn(a * b) == fn(a) * fn(b)


@given(st.fractions(), st.fractions())
def test_fraction_arithmetic_is_reduced(x, y):
    s = x + y
    assert gcd(abs(s.numerator), s.denominator) == 1 or s.numerator == 0
    assert s == Fraction(s.numerator, s.denominator)
