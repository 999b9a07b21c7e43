from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from egyptfrac.arith import ArithmeticDomainError, tau
from egyptfrac.egyptian import (UnitFractionSum, UnitTerm, canonicalize, count_two,
                                count_two_brute, make_record, record_from_json, solve_three,
                                solve_two, three_triples, three_triples_scan, verify_sum)


def brute_triples(k, n):
    target = Fraction(k, n)
    out = []
    for x in range(1, 3 * n // k + 2):
        r1 = target - Fraction(1, x)
        if r1 <= 0:
            continue
        for y in range(x, int(2 / r1) + 2):
            r2 = r1 - Fraction(1, y)
            if r2 > 0 and r2.numerator == 1 and r2.denominator >= y:
                out.append((x, y, r2.denominator))
    return sorted(out)


def test_verify_sum_examples():
    assert verify_sum(UnitFractionSum.of(Fraction(4, 7), (2, 28, 28)))
    assert not verify_sum(UnitFractionSum.of(Fraction(4, 7), (2, 28, 29)))
    assert verify_sum(UnitFractionSum.of(Fraction(4, 1801), (451, 295364, 3249004)))


def test_signed_terms():
    s = UnitFractionSum(Fraction(1, 3), (UnitTerm(1, 2), UnitTerm(-1, 6)))
    assert verify_sum(s)
    with pytest.raises(ValueError):
        UnitTerm(1, 0)
    with pytest.raises(ValueError):
        UnitTerm(2, 5)


def test_canonicalize():
    s = UnitFractionSum.of(Fraction(4, 7), (28, 2, 28))
    assert canonicalize(s).dens() == (2, 28, 28)
    s = UnitFractionSum(Fraction(1, 3), (UnitTerm(-1, 6), UnitTerm(1, 2)))
    assert [(t.sign, t.den) for t in canonicalize(s).terms] == [(1, 2), (-1, 6)]
    s = UnitFractionSum.of(Fraction(4, 13), (130, 10, 5))
    assert verify_sum(s) and canonicalize(s).dens() == (5, 10, 130)
    assert (5, 10, 130) in three_triples(4, 13)


def test_solve_two_examples():
    assert sorted(s.dens() for s in solve_two(Fraction(1, 2))) == [(3, 6), (4, 4)]
    assert [s.dens() for s in solve_two(Fraction(1, 1))] == [(2, 2)]
    assert len(solve_two(Fraction(1, 7919))) == 2
    for bad in (Fraction(2, 5), Fraction(-1, 3), 0):
        with pytest.raises(ArithmeticDomainError):
            solve_two(bad)


def test_count_two_examples():
    assert count_two(12) == 8 == count_two_brute(12)
    assert count_two(1) == 1
    assert count_two(101) == 2
    with pytest.raises(ArithmeticDomainError):
        count_two(0)


@given(st.integers(1, 3000))
def test_count_two_agrees(n):
    assert count_two(n) == len(solve_two(Fraction(1, n))) == count_two_brute(n) == -(-tau(n * n) // 2)


def test_solve_three_examples():
    assert {(2, 28, 28), (3, 6, 14), (4, 4, 14)} <= set(three_triples(4, 7))
    assert {(5, 190, 190), (6, 38, 57)} <= set(three_triples(4, 19))
    assert (1, 2, 2) in three_triples(4, 2)
    with pytest.raises(ArithmeticDomainError):
        solve_three(10, 3)


def test_three_triples_match_fraction_brute():
    for k in (1, 2, 3, 4, 5):
        for n in range(1, 61):
            if k <= 3 * n:
                assert three_triples(k, n) == brute_triples(k, n), (k, n)


@given(st.integers(1, 4), st.integers(2, 400))
def test_triples_sorted_distinct_and_exact(k, n):
    triples = three_triples(k, n)
    assert len(set(triples)) == len(triples)
    assert triples == sorted(triples) == sorted(three_triples_scan(k, n))
    for x, y, z in triples:
        assert x <= y <= z
        assert Fraction(1, x) + Fraction(1, y) + Fraction(1, z) == Fraction(k, n)


def test_first_only_is_prefix():
    for n in range(2, 200):
        assert three_triples(4, n, find_all=False) == three_triples(4, n)[:1]


def test_record_json_round_trip():
    rec = make_record(4, 7, UnitFractionSum.of(Fraction(4, 7), (2, 28, 28)), "oracle")
    text = rec.dumps()
    back = record_from_json(json.loads(text))
    assert back == rec and back.verified
    obj = json.loads(text)
    assert all(isinstance(t["den"], str) for t in obj["terms"])
    # a tampered flag is ignored; verification is recomputed
    obj["verified"] = True
    obj["terms"][2]["den"] = "29"
    assert not record_from_json(obj).verified
