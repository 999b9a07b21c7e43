from __future__ import annotations

import json

import pytest

from egyptfrac.arith import is_prime
from egyptfrac.egyptian import record_from_json
from egyptfrac.families import evaluate
from egyptfrac.tables import (BrvsRow, Mod840Row, TableDomainError, emit_table, load_paper_rows,
                              render_table, search_abc_mod840, search_brvs,
                              search_integer_witness, verify_brvs_row)


def primes_4a1(limit):
    return [w for w in range(5, limit + 1, 4) if is_prime(w)]


def brute_brvs(w, b_max=4, s_max=60):
    # plain loops over b, factorizations r*v, then s
    for b in range(1, b_max + 1):
        P = ((4 * b - 1) * w + 1) // 4
        for r in range(1, P + 1):
            if P % r:
                continue
            v = P // r
            for s in range(1, s_max + 1):
                D = (4 * r * v - 1) * s - r * w
                if D > 0 and (r * v * w * s) % D == 0:
                    return BrvsRow(w, b, r, v, s)
    return None


def test_paper_rows_cover_the_primes():
    rows = load_paper_rows("4a1")
    assert [r.w for r in rows] == primes_4a1(1009)
    rows120 = load_paper_rows("120a1")
    assert all(r.w % 120 == 1 and is_prime(r.w) for r in rows120)
    with pytest.raises(TableDomainError):
        load_paper_rows("7a3")


def test_verify_row_examples():
    for row in (BrvsRow(5, 1, 1, 4, 1), BrvsRow(13, 1, 1, 10, 1), BrvsRow(17, 2, 1, 30, 1),
                BrvsRow(241, 6, 66, 21, 33), BrvsRow(601, 3, 87, 19, 58)):
        assert verify_brvs_row(row), row
    assert BrvsRow(17, 2, 1, 30, 1).third == 5
    # (4*4 - 1)*2 - 5 = 25 does not divide 1*4*5*2 = 40
    assert not verify_brvs_row(BrvsRow(5, 1, 1, 4, 2))
    # s = 2 repairs the printed row for 353: D = 1059*2 - 1765 = 353 divides 5*53*353*2
    assert verify_brvs_row(BrvsRow(353, 1, 5, 53, 2))


def test_search_examples():
    assert search_brvs(5) == BrvsRow(5, 1, 1, 4, 1)
    assert search_brvs(13) == BrvsRow(13, 1, 1, 10, 1)
    assert search_brvs(17) == BrvsRow(17, 2, 1, 30, 1)
    for bad in (7, 9, 21):
        with pytest.raises(TableDomainError):
            search_brvs(bad)


def test_search_matches_brute_order():
    for w in primes_4a1(600):
        want = brute_brvs(w)
        if want is not None:
            assert search_brvs(w) == want, w


def test_search_reports_none_within_caps():
    # 17 needs b = 2, so a cap of 1 is an explicit "none within caps"
    assert search_brvs(17, b_max=1) is None
    assert search_brvs(17, b_max=2, s_max=1) == BrvsRow(17, 2, 1, 30, 1)


def test_witness_rows():
    row = search_integer_witness(409)
    assert row.integer is None and row.rational == (1, 13, 2, 8)
    row = search_integer_witness(3049)
    assert row.integer == (6, 65, 2)
    assert search_integer_witness(5569).integer is None


def test_mod840_pin():
    rows = search_abc_mod840(3361)
    assert rows[0] == Mod840Row(841, 29, 1, 3, "form1")
    assert [r.m for r in rows] == [841, 1681, 2521, 3361]
    for row in rows:
        rec = evaluate("F17", {"form": row.form, "m": row.m, "a": row.a, "b": row.b, "c": row.c})
        assert rec.verified and rec.n == row.m
    assert search_abc_mod840(3361) == rows
    with pytest.raises(TableDomainError):
        search_abc_mod840(0, m_values=[842])


def test_mod840_order_independent_of_chunking():
    ms = list(range(1, 8400, 840))
    whole = search_abc_mod840(8400)
    pieces = search_abc_mod840(0, m_values=ms[:4]) + search_abc_mod840(0, m_values=ms[4:])
    assert whole == pieces


def test_emit_csv_is_byte_stable(tmp_path):
    rows = [search_brvs(w) for w in primes_4a1(1009)]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_table(rows, "csv", str(a))
    emit_table(rows, "csv", str(b))
    data = a.read_bytes()
    assert data == b.read_bytes()
    assert data.startswith(b"w,b,r,v,s\n") and b"\r" not in data
    assert len(data.splitlines()) == 1 + 81


def test_empty_table_is_header_only(tmp_path):
    path = tmp_path / "e.csv"
    emit_table([], "csv", str(path))
    assert path.read_bytes() == b"w,b,r,v,s\n"


def test_json_rows_round_trip():
    rows = load_paper_rows("4a1")[:5]
    items = json.loads(render_table(rows, "json"))
    for row, item in zip(rows, items):
        assert BrvsRow(*(int(item[k]) for k in "wbrvs")) == row
        rec = record_from_json(item["record"])
        assert rec.verified and rec.n == row.w


def test_unverified_rows_are_not_emitted():
    with pytest.raises(TableDomainError):
        render_table([BrvsRow(5, 1, 1, 4, 2)], "csv")
    with pytest.raises(TableDomainError):
        render_table([], "xml")
