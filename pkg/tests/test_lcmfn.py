from __future__ import annotations

from math import comb, factorial, lcm, prod

import pytest
from hypothesis import given, strategies as st

from egyptfrac.arith import divisors, factorize, is_prime, tau
from egyptfrac.lcmfn import (LcmDomainError, QTriple, corollary_checks, fermat_congruence,
                             fermat_quotient, full_split, literal_split, mq_printed_report,
                             q_brute, q_closed, restricted_sum_p, restricted_sum_p_closed,
                             restricted_sum_x, restricted_sum_x_closed, series_suite,
                             sum_q_over_divisors)


def xs(a, b):
    return [x for x in range(1, a + 1) if lcm(x, b) == a]


def test_q_examples():
    assert q_brute(12, 4) == QTriple(12, 4, 3, 21, 216)
    assert xs(12, 4) == [3, 6, 12]
    assert q_closed(12, 4) == q_brute(12, 4)
    assert q_closed(12, 12).Q == 6 and q_closed(12, 12).MQ == 1728
    assert all(q_brute(a, a).Q == tau(a) for a in range(1, 300))
    assert q_brute(12, 5).Q == 0


def test_q_of_p_times_k():
    for p in (2, 3, 5, 7):
        for k in range(1, 40):
            assert q_brute(p * k, p).Q == (1 if k % p == 0 else 2)


def test_q_closed_rejects_non_divisor():
    with pytest.raises(LcmDomainError):
        q_closed(12, 5)


@given(st.integers(1, 3000), st.data())
def test_q_closed_equals_enumeration(a, data):
    b = data.draw(st.sampled_from(divisors(a)))
    got = q_closed(a, b)
    sols = xs(a, b)
    assert (got.Q, got.SQ, got.MQ) == (len(sols), sum(sols), prod(sols))


def test_split_choice_matters():
    # primes where b has a lower exponent than a must stay in d
    assert full_split(12, 2) == (1, 12)
    assert literal_split(12, 2) == (4, 3)
    assert q_closed(12, 2) == q_brute(12, 2) == QTriple(12, 2, 1, 12, 12)
    assert q_closed(12, 2, literal_split).Q == 3
    bad = [(a, b) for a in range(1, 200) for b in divisors(a)
           if q_closed(a, b, literal_split) != q_brute(a, b)]
    # literal split agrees exactly when every prime of b has full exponent in b
    assert all(any(factorize(b).get(p, 0) < e for p, e in factorize(a).items() if b % p == 0)
               for a, b in bad)


def test_sum_over_divisors():
    assert sum_q_over_divisors(12) == 15 == tau(144)
    assert sum_q_over_divisors(1) == 1
    for p in (2, 3, 5):
        for k in range(1, 8):
            assert sum_q_over_divisors(p**k) == 2 * k + 1


def _vals(checks):
    return {c["identity"]: (int(c["lhs"]), int(c["rhs"]), c["ok"]) for c in checks}


def test_series_examples():
    got = _vals(series_suite(3, 4, 3, 2))
    assert got["sum Q_pj[p], j<=s"] == (7, 7, True)
    assert got["prod Q_pj[p], j<=s"] == (8, 8, True)
    got = _vals(series_suite(5, 5, 1, 1))
    assert got["sum Q_pj[p], j<=s"][0] == 9
    got = _vals(series_suite(2, 3, 3, 3))
    assert got["sum Q_tp^r[p^r], r<=k"] == (comb(5, 2), comb(5, 2), True)
    assert got["prod Q_tp^r[p^r], r<=k"] == (factorial(4), factorial(4), True)
    with pytest.raises(LcmDomainError):
        series_suite(3, 4, 3, 3)


def test_series_all_hold_small():
    for p in (2, 3, 5, 7, 11):
        for k in range(0, 6):
            assert all(c["ok"] for c in series_suite(p, 30, k, 1))


def test_restricted_sum_examples():
    assert restricted_sum_x(12, 2) == 12 == restricted_sum_x_closed(12, 2)
    assert restricted_sum_p(12, 3, 1) == 10 == restricted_sum_p_closed(12, 3, 1)
    for p, k in ((2, 3), (3, 4)):
        assert restricted_sum_x(p**k, p**k) == k + 1
    with pytest.raises(LcmDomainError):
        restricted_sum_x(12, 5)


def test_restricted_sum_counterexample_shape():
    # the product form fails when some prime of x sits strictly between exponent 1 and alpha
    assert (restricted_sum_x(8, 4), restricted_sum_x_closed(8, 4)) == (5, 6)
    for n in range(1, 400):
        f = factorize(n)
        for x in divisors(n):
            a = factorize(x)
            strictly_inside = any(2 <= a.get(p, 0) < e for p, e in f.items())
            agrees = restricted_sum_x(n, x) == restricted_sum_x_closed(n, x)
            assert agrees or strictly_inside, (n, x)
        for p, alpha in f.items():
            for d in range(1, alpha + 1):
                assert restricted_sum_p(n, p, d) == restricted_sum_p_closed(n, p, d)


def test_fermat_examples():
    assert fermat_quotient(3, 4) == 5 and fermat_quotient(5, 11) == 2928
    assert fermat_congruence(3, 1)["ok"] and fermat_congruence(3, 2)["ok"]
    # SQ_10[5] = 5 + 10 = 15 is not right: lcm(10, 5) = 10 but lcm(5, 5) = 5, so only 10 counts
    rep = fermat_congruence(5, 2)
    assert rep["SQ"] == "12" and rep["ok"]
    assert sum(xs(10, 5)) == 12


def test_fermat_fails_exactly_when_p_divides_d():
    for p in (3, 5, 7, 11, 13):
        for d in range(1, 31):
            assert fermat_congruence(p, d)["ok"] == (d % p != 0), (p, d)


def test_corollary_failures_are_the_equal_prime_case():
    for c in corollary_checks(120):
        if not c["ok"]:
            assert c["args"]["m"] == c["args"]["n"] and is_prime(int(c["args"]["m"]))


def test_printed_mq_report():
    rep = mq_printed_report(200)
    assert rep["b_equals_a_matches"] == 200
    assert rep["other_matches"] == 46 and rep["mismatches"] == 852
