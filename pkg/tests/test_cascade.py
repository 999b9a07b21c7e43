from __future__ import annotations

from fractions import Fraction

import pytest

from egyptfrac.cascade import CASCADE, StrategyError, decompose, decompose_all, family_records
from egyptfrac.egyptian import three_triples


def dens(rec):
    return tuple(sorted(t.den for t in rec.terms))


def test_cascade_order():
    assert CASCADE == ("F31", "F32", "F43", "F48", "F49", "F50")


def test_cascade_prefers_families():
    rec = decompose(4, 7)
    assert rec.family == "F31" and dens(rec) == (2, 16, 112)
    assert decompose(4, 8).family == "F48"
    # 4/5569 falls through to the oracle
    rec = decompose(4, 5569)
    assert rec.family == "oracle" and dens(rec) == (1394, 1109029, 506446965082)


def test_cascade_small_range():
    for n in range(2, 3000):
        rec = decompose(4, n)
        assert rec.verified and len(rec.terms) == 3
        assert sum(Fraction(1, d) for d in dens(rec)) == Fraction(4, n)


def test_other_numerators_use_the_oracle():
    for k in (1, 2, 3, 5):
        for n in range(2, 60):
            if k <= 3 * n:
                rec = decompose(k, n)
                assert rec.verified and dens(rec) == three_triples(k, n)[0]


def test_all_oracle_triples():
    recs = decompose_all(4, 7)
    assert [dens(r) for r in recs] == three_triples(4, 7)
    assert (2, 28, 28) in [dens(r) for r in recs]


def test_cascade_all_deduplicates():
    recs = decompose_all(4, 7, "cascade")
    keys = [dens(r) for r in recs]
    assert len(keys) == len(set(keys)) and set(keys) == set(three_triples(4, 7))


def test_family_strategy():
    recs = family_records("F43", 4, 7, first_only=False)
    assert (2, 28, 28) in [dens(r) for r in recs]
    assert decompose(4, 5569, "family:F13").verified
    assert decompose(4, 6, "family:F31") is None


def test_strategy_errors():
    with pytest.raises(StrategyError):
        decompose(4, 7, "greedy")
    with pytest.raises(StrategyError):
        decompose(4, 1)
    with pytest.raises(StrategyError):
        decompose(4, 7, "oracle", params={"b": 2})
    with pytest.raises(StrategyError):
        decompose(4, 11, "family:F31", params={"b": 2})
