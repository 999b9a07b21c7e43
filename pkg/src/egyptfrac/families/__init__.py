"""Registry of parametric identity families.

>>> evaluate("F31", {"k": 4, "b": 2}).sum.dens()
(2, 16, 112)
"""
from __future__ import annotations

import hashlib
import random
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional

from ..egyptian import DecompRecord
from ..residue import ResidueClass
from .catalog import BY_ID, FAMILIES
from .core import (SAMPLE_DRAW_CAP, T_SCAN_LIMIT, CompiledForm, DomainError, FamilyDef,
                   Form, IdentityViolation, NotAProgression, Term)

__all__ = [
    "FAMILIES", "REGISTRY_VERSION", "DomainError", "IdentityViolation", "NotAProgression",
    "FamilyDef", "Form", "Term", "get", "compiled", "select_form", "evaluate", "check_domain",
    "residue_signature", "verify_identity", "grid_sweep", "list_families", "family_ids",
]

REGISTRY_VERSION = f"{len(FAMILIES)}f-" + hashlib.sha256(repr(FAMILIES).encode()).hexdigest()[:10]

SIGNATURE_CHECK = 100   # consecutive t values checked by residue_signature


def family_ids() -> List[str]:
    return [f.id for f in FAMILIES]


def get(fid: str) -> FamilyDef:
    try:
        return BY_ID[fid.upper()]
    except KeyError:
        raise DomainError(fid, f"unknown family {fid!r}") from None


@lru_cache(maxsize=None)
def compiled(fid: str, form: Optional[str] = None) -> CompiledForm:
    fam = get(fid)
    return CompiledForm(fam, fam.form(form))


def select_form(fid: str, p: Mapping[str, Any], partial: bool = False) -> CompiledForm:
    """Pick the form named by p["form"], else the one whose parameters match p."""
    fam = get(fid)
    if "form" in p:
        return compiled(fam.id, p["form"])
    if len(fam.forms) > 1:
        keys = set(p)
        for f in fam.forms:
            names = set(f.params)
            if partial and f.free is not None:
                names.discard(f.free)
            if names == keys:
                return compiled(fam.id, f.name)
    return compiled(fam.id, fam.forms[0].name)


def evaluate(fid: str, p: Mapping[str, Any]) -> DecompRecord:
    """Evaluate a family at a binding; raises DomainError naming the violated predicate."""
    return select_form(fid, p).evaluate(p)


def check_domain(fid: str, p: Mapping[str, Any]) -> Dict[str, Any]:
    """{"ok": bool, "violated": predicate or None}.  An incomplete binding raises."""
    cf = select_form(fid, p)
    bad, _ = cf.check(p)
    return {"family": cf.fam.id, "form": cf.form.name, "ok": bad is None, "violated": bad}


def residue_signature(fid: str, p_partial: Mapping[str, Any]) -> ResidueClass:
    """The progression of covered n with every parameter but the free one fixed."""
    cf = select_form(fid, p_partial, partial=True)
    free = cf.form.free
    if free is None:
        raise NotAProgression(f"{cf.fam.id}/{cf.form.name} has no free variable")
    base = {key: v for key, v in p_partial.items() if key != free}
    start = 0 if free in cf.form.zero_ok else 1
    if free in cf.form.anyint:
        start = -T_SCAN_LIMIT
    t0 = None
    for t in range(start, T_SCAN_LIMIT + 1):
        bad, _ = cf.check({**base, free: t})
        if bad is None:
            t0 = t
            break
    if t0 is None:
        raise NotAProgression(f"{cf.fam.id}: no admissible {free} <= {T_SCAN_LIMIT}")
    ns = []
    for t in range(t0, t0 + SIGNATURE_CHECK):
        bad, env = cf.check({**base, free: t})
        if bad is not None:
            raise NotAProgression(f"{cf.fam.id}: {free}={t} leaves the domain ({bad})")
        ns.append(cf.n_value(env))
    m = ns[1] - ns[0]
    if m < 1 or any(ns[i] != ns[0] + m * i for i in range(len(ns))):
        raise NotAProgression(f"{cf.fam.id}: n is not an increasing linear function of {free}")
    return ResidueClass.of(m, m * t0 - ns[0], t0)


def _sample_one(cf_list, fid: str, seed: int, i: int, cap: int):
    rng = random.Random(f"{seed}:{fid}:{i}")
    cf = cf_list[i % len(cf_list)]   # forms take turns so each gets its share
    for draw in range(1, cap + 1):
        p = cf.draw(rng)
        if p is None:
            continue
        try:
            bad, _ = cf.check(p)
        except DomainError:
            continue
        if bad is None:
            return cf, p, draw
    return cf, None, cap


def verify_identity(fid: str, sample_count: int, seed: int = 0) -> Dict[str, Any]:
    """Seeded random in-domain samples, each evaluated and verified exactly.

    Sample i uses its own generator seeded by (seed, family, i), so the report
    does not depend on evaluation order.  The family as a whole gets at most
    SAMPLE_DRAW_CAP draws, split evenly between samples.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    fam = get(fid)
    cf_list = [compiled(fam.id, f.name) for f in fam.forms]
    cap = max(1, SAMPLE_DRAW_CAP // sample_count)
    failures, draws, accepted, unsampled = [], 0, 0, 0
    per_form: Dict[str, int] = {f.name: 0 for f in fam.forms}
    for i in range(sample_count):
        cf, p, used = _sample_one(cf_list, fam.id, seed, i, cap)
        draws += used
        if p is None:
            unsampled += 1
            continue
        accepted += 1
        per_form[cf.form.name] += 1
        try:
            rec = cf.evaluate(p)
            if not rec.verified:
                failures.append({"params": _show(p), "error": "sum not verified"})
        except (IdentityViolation, DomainError) as exc:
            failures.append({"params": _show(p), "error": str(exc)})
    return {
        "family": fam.id, "seed": seed, "samples": sample_count, "accepted": accepted,
        "unsampled": unsampled, "draws": draws, "draw_cap": cap * sample_count,
        "per_form": per_form, "failures": failures, "ok": not failures and unsampled == 0,
    }


def grid_sweep(fid: str, top: int = 6) -> Dict[str, Any]:
    """Exhaustive sweep of every parameter over 1..top (form-specific overrides apply)."""
    fam = get(fid)
    points = in_domain = 0
    failures = []
    for f in fam.forms:
        cf = compiled(fam.id, f.name)
        for p in cf.grid_points(top):
            points += 1
            bad, _ = cf.check(p)
            if bad is not None:
                continue
            in_domain += 1
            try:
                if not cf.evaluate(p).verified:
                    failures.append({"form": f.name, "params": _show(p), "error": "sum not verified"})
            except IdentityViolation as exc:
                failures.append({"form": f.name, "params": _show(p), "error": str(exc)})
    return {"family": fam.id, "top": top, "points": points, "in_domain": in_domain,
            "failures": failures, "ok": not failures}


def _expand_n(form: Form) -> str:
    src = form.n
    for name, expr in reversed(form.derived):
        if src == name:
            src = expr
    return src


def list_families() -> List[Dict[str, str]]:
    out = []
    for fam in FAMILIES:
        covered = []
        for f in fam.forms:
            if f.free is not None:
                label = f"{f.name}: " if len(fam.forms) > 1 else ""
                covered.append(f"{label}n = {_expand_n(f)} over {f.free}")
        out.append({
            "id": fam.id, "title": fam.title, "signature": fam.signature(), "anchor": fam.anchor,
            "covered": "; ".join(covered) if covered else "-",
        })
    return out


def _show(p: Mapping[str, Any]) -> Dict[str, Any]:
    return {key: (str(v) if not isinstance(v, tuple) else [str(x) for x in v]) for key, v in p.items()}
