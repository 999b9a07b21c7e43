"""Decomposition strategies: a family cascade with an exact oracle behind it."""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Tuple

from .coverage import Progression, progressions
from .egyptian import DecompRecord, make_record, three_triples, UnitFractionSum
from .families import DomainError, IdentityViolation, compiled, get

__all__ = ["CASCADE", "decompose", "decompose_all", "family_records", "StrategyError"]

# tried in this order; the first family progression containing n wins
CASCADE = ("F31", "F32", "F43", "F48", "F49", "F50")
SEARCH_TOP = 12


class StrategyError(ValueError):
    pass


def _three_positive(rec: DecompRecord) -> bool:
    return len(rec.terms) == 3 and all(t.sign == 1 for t in rec.terms)


@lru_cache(maxsize=None)
def _index(fid: str) -> Tuple[Progression, ...]:
    return progressions(fid)


def _from_progressions(fid: str, n: int, first_only: bool) -> List[DecompRecord]:
    out = []
    for prog in _index(fid):
        if n not in prog.cls:
            continue
        t = prog.t0 + (n - prog.cls.first) // prog.cls.m
        p = {**prog.binding_dict(), prog.free: t}
        cf = compiled(fid, prog.form)
        try:
            rec = cf.evaluate(p)
        except (DomainError, IdentityViolation):
            continue
        if rec.k == 4 and rec.n == n and _three_positive(rec):
            out.append(rec)
            if first_only:
                break
    return out


def _direct_search(fid: str, k: int, n: int, first_only: bool, top: int) -> List[DecompRecord]:
    # forms that take n itself as a parameter: the others range over 1..top
    out = []
    for form in get(fid).forms:
        if form.n not in form.params or form.lists or form.rationals:
            continue
        cf = compiled(fid, form.name)
        names = [p for p in form.params if p not in (form.n, "k")]
        axes = [(-1, 1) if p in form.signs else range(-top if p in form.anyint else 1, top + 1)
                for p in names]
        for combo in itertools.product(*axes):
            p = {**dict(zip(names, combo)), form.n: n}
            if "k" in form.params:
                p["k"] = k
            try:
                bad, _ = cf.check(p)
                if bad is not None:
                    continue
                rec = cf.evaluate(p)
            except (DomainError, IdentityViolation):
                continue
            if rec.k == k and rec.n == n and _three_positive(rec):
                out.append(rec)
                if first_only:
                    return out
    return out


def family_records(fid: str, k: int, n: int, first_only: bool = True,
                   top: int = SEARCH_TOP) -> List[DecompRecord]:
    """Three-term records of k/n from one family.

    Progressions (parameters on the coverage grid) are inverted first; forms
    that take n directly are then searched with other parameters in 1..top.
    """
    fam = get(fid)
    out = _from_progressions(fam.id, n, first_only) if k == 4 else []
    if out and first_only:
        return out
    out += _direct_search(fam.id, k, n, first_only, top)
    return out[:1] if first_only else out


def _oracle(k: int, n: int, first_only: bool) -> List[DecompRecord]:
    triples = three_triples(k, n, find_all=not first_only)
    return [make_record(k, n, UnitFractionSum.of(Fraction(k, n), t), "oracle") for t in triples]


def _parse(strategy: str) -> Tuple[str, Optional[str]]:
    if strategy in ("cascade", "oracle"):
        return strategy, None
    if strategy.startswith("family:"):
        fid = strategy.split(":", 1)[1]
        return "family", get(fid).id
    raise StrategyError(f"unknown strategy {strategy!r}")


def decompose(k: int, n: int, strategy: str = "cascade",
              params: Optional[Mapping[str, Any]] = None) -> Optional[DecompRecord]:
    """One verified three-term decomposition of k/n, or None if the strategy finds none.

    With params, a family strategy evaluates exactly that binding (k and n
    are filled in when the form takes them).
    """
    kind, fid = _parse(strategy)
    if k < 1 or n < 2:
        raise StrategyError("need k >= 1 and n >= 2")
    if params is not None:
        if kind != "family":
            raise StrategyError("parameters need a family strategy")
        return _with_params(fid, k, n, params)
    if kind == "oracle":
        recs = _oracle(k, n, True)
    elif kind == "family":
        recs = family_records(fid, k, n)
    else:
        recs = []
        if k == 4:
            for f in CASCADE:
                recs = _from_progressions(f, n, True)
                if recs:
                    break
        if not recs:
            recs = _oracle(k, n, True)
    return _checked(recs[0]) if recs else None


def decompose_all(k: int, n: int, strategy: str = "oracle") -> List[DecompRecord]:
    """Every decomposition the strategy yields; the oracle lists all triples."""
    kind, fid = _parse(strategy)
    if k < 1 or n < 2:
        raise StrategyError("need k >= 1 and n >= 2")
    if kind == "oracle":
        recs = _oracle(k, n, False)
    elif kind == "family":
        recs = family_records(fid, k, n, first_only=False)
    else:
        recs = []
        if k == 4:
            for f in CASCADE:
                recs += _from_progressions(f, n, False)
        recs += _oracle(k, n, False)
    seen, out = set(), []
    for rec in recs:
        key = tuple(sorted(t.den for t in rec.terms))
        if key not in seen:
            seen.add(key)
            out.append(_checked(rec))
    return out


def _with_params(fid: str, k: int, n: int, params: Mapping[str, Any]) -> DecompRecord:
    p = dict(params)
    fam = get(fid)
    form = fam.form(p.get("form")) if "form" in p else None
    names = form.params if form else {q for f in fam.forms for q in f.params}
    if "k" in names:
        p.setdefault("k", k)
    if "n" in names:
        p.setdefault("n", n)
    from .families import evaluate
    rec = evaluate(fid, p)
    if Fraction(rec.k, rec.n) != Fraction(k, n):
        raise StrategyError(f"binding gives {rec.k}/{rec.n}, not {k}/{n}")
    return _checked(rec)


def _checked(rec: DecompRecord) -> DecompRecord:
    if not rec.verified:
        raise IdentityViolation(f"unverified decomposition of {rec.k}/{rec.n}")
    return rec
