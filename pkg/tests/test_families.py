from __future__ import annotations

from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given, strategies as st

from egyptfrac.coverage import progressions
from egyptfrac.families.core import CompiledForm, FamilyDef, Form, Term
from egyptfrac.families import (REGISTRY_VERSION, DomainError, IdentityViolation, NotAProgression,
                                check_domain, compiled, evaluate, family_ids, get, grid_sweep,
                                list_families, residue_signature, verify_identity)


def dens(rec):
    return sorted(t.den for t in rec.terms)


def test_registry_shape():
    assert family_ids() == [f"F{i:02d}" for i in range(1, 54)]
    assert REGISTRY_VERSION.startswith("53f-")
    rows = list_families()
    assert [r["id"] for r in rows] == family_ids()
    for row in rows:
        for form in get(row["id"]).forms:
            assert all(p in row["signature"] for p in form.params)


def test_evaluate_examples():
    rec = evaluate("F31", {"k": 4, "b": 2})
    assert (rec.k, rec.n, dens(rec)) == (4, 7, [2, 16, 112]) and rec.verified
    rec = evaluate("F43", {"n": 7})
    assert (rec.k, rec.n, dens(rec)) == (4, 7, [2, 28, 28])
    rec = evaluate("F51", {"w": 13, "b": 1, "r": 1, "v": 10, "s": 1})
    assert (rec.k, rec.n, dens(rec)) == (4, 13, [5, 10, 130])
    rec = evaluate("F53", {"a": 1, "b": 1, "c": 2, "d": 1})
    assert (rec.k, rec.n, dens(rec)) == (4, 2, [1, 2, 2])


def test_domain_errors_name_the_predicate():
    with pytest.raises(DomainError, match=r"4 \| a \+ b \+ c"):
        evaluate("F53", {"a": 1, "b": 2, "c": 3, "d": 1})
    # (k, m, l, e, d, t) = (4, 6, 1, 1, 2, 1): 3 does not divide (mt + 2l)/k = 2
    with pytest.raises(DomainError, match=r"e\+2l"):
        evaluate("F22", {"k": 4, "m": 6, "l": 1, "e": 1, "d": 2, "t": 1})
    with pytest.raises(DomainError):
        evaluate("F99", {})


def test_check_domain_examples():
    assert check_domain("F02", {"k": 4, "m": 3, "v": 2, "q": 1, "r": 2})["ok"]
    rep = check_domain("F51", {"w": 3, "r": 1, "v": 1, "s": 1})
    assert not rep["ok"] and rep["violated"] == "divisor (4rv-1)s - rw is nonzero"
    # z = 6t + 1 + y leaves [6t+1, 12t] for t = 1, y = 6
    rep = check_domain("F48", {"form": "24t+1", "t": 1, "y": 6, "v": 1, "mm": 1})
    assert not rep["ok"] and rep["violated"] == "6t+1 <= z <= 12t"
    with pytest.raises(DomainError):
        check_domain("F31", {"k": 4})


def test_residue_signature_examples():
    assert residue_signature("F33", {"omega": 1}).render() == "8t-3"
    assert residue_signature("F34", {"omega": 1}).render() == "16t-13"
    cls = residue_signature("F41", {"k": 4, "r": 1})
    assert cls.render() == "12t-7" and list(cls.members(29)) == [5, 17, 29]
    with pytest.raises(NotAProgression):
        residue_signature("F53", {"a": 1, "b": 1, "c": 2, "d": 1})


@pytest.mark.parametrize("fid", family_ids())
def test_progressions_match_evaluation(fid):
    # signature soundness: n at t0..t0+99 is the class member, term by term verified
    for prog in islice(progressions(fid), 4):
        cf = compiled(fid, prog.form)
        for i in range(100):
            rec = cf.evaluate({**prog.binding_dict(), prog.free: prog.t0 + i})
            assert rec.verified
            assert Fraction(rec.k, rec.n) == Fraction(4, prog.cls.first + prog.cls.m * i)


def test_sampling_is_deterministic():
    a = verify_identity("F31", 200, seed=7)
    b = verify_identity("F31", 200, seed=7)
    assert a == b and a["ok"] and not a["failures"]
    assert verify_identity("F45", 50, seed=1)["ok"]
    with pytest.raises(ValueError):
        verify_identity("F31", 0)


def test_grid_sweep_small():
    rep = grid_sweep("F02", 4)
    assert rep["ok"] and rep["in_domain"] > 0


def test_identity_violation_is_never_silent():
    # an unguarded form whose denominator is not integral, and one whose sum is wrong
    half = Form("main", ("t",), "1", "t", (Term("t"), Term("2*t/3")))
    with pytest.raises(IdentityViolation):
        CompiledForm(FamilyDef("X1", "bad", "", (half,)), half).evaluate({"t": 1})
    wrong = Form("main", ("t",), "1", "t", (Term("2*t"), Term("3*t")))
    with pytest.raises(IdentityViolation):
        CompiledForm(FamilyDef("X2", "bad", "", (wrong,)), wrong).evaluate({"t": 5})


def test_f42_real_variable_shift():
    for t in range(1, 40):
        real = evaluate("F42", {"x": Fraction(2 * t - 1, 2)})
        shifted = compiled("F42", "shifted").evaluate({"t": t})
        assert real.n == shifted.n == 8 * t - 5
        assert [(u.sign, u.den) for u in real.terms] == [(u.sign, u.den) for u in shifted.terms]


def test_key_equation_specializations_agree():
    for w, b, r, v, s in [(5, 1, 1, 4, 1), (13, 1, 1, 10, 1), (17, 2, 1, 30, 1)]:
        assert r * v == ((4 * b - 1) * w + 1) // 4
        key = evaluate("F51", {"w": w, "b": b, "r": r, "v": v, "s": s})
        b_form = evaluate("F52", {"w": w, "b": b, "r": r, "s": s})
        assert dens(key) == dens(b_form)
        a = (w - 1) // 4
        third = Fraction(((4 * b - 1) * a + b) * s, (4 * b - 1) * s - r)
        assert third in {Fraction(d) for d in dens(key)}


@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 500))
def test_shifted_lemma_quotient(k, omega, t):
    if k * omega <= 2:
        return
    N = (k * k * omega - 2 * k) * t - (k * omega - 1)
    X = N * (k * omega - 1) + 1
    assert X % (k * (k * omega - 2)) == 0
    assert X // (k * (k * omega - 2)) == (k * omega - 1) * t - omega


def test_odd_q_progressions():
    for q in range(3, 200, 2):
        step, off = {1: (8, 1), 7: (24, 7), 5: (8, 5), 3: (24, 19)}[q % 8]
        for t in range(1, 101):
            v = step * t - off
            assert (q * v + 1) % 8 == 0
        # some odd v satisfies both parts: qv = -1 mod lcm(8, 4(q-1))
        assert any((q * v + 1) % 8 == 0 and ((q * v + 1) // 4) % (q - 1) == 0
                   for v in range(1, 16 * q, 2))
    # divisibility by q - 1 is not automatic along the progression
    assert ((9 * 15 + 1) // 4) % 8 != 0


@pytest.mark.parametrize("fid", ["F17", "F32", "F48", "F45"])
def test_multi_form_families_list_every_form(fid):
    fam = get(fid)
    assert len(fam.forms) >= 2
    for form in fam.forms:
        assert compiled(fid, form.name).form is form


@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 500))
def test_square_lemma_quotient(k, omega, t):
    N = k * k * omega * t - ((k - 1) * k * omega + 1)
    X = N * (k * omega + 1) + 1
    assert X % (k * k * omega) == 0
    assert X // (k * k * omega) == (k * omega + 1) * t - ((k - 1) * omega + 1)
