"""Family definitions as data and the single generic evaluator."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..arith import divisors
from ..egyptian import DecompRecord, UnitFractionSum, UnitTerm, make_record
from .expr import compile_expr, is_int, run

SAMPLE_DRAW_CAP = 10**5
T_SCAN_LIMIT = 10**4


class DomainError(ValueError):
    """A binding violates a family's domain; ``predicate`` names the guard."""

    def __init__(self, family: str, predicate: str):
        super().__init__(f"{family}: domain violation: {predicate}")
        self.family = family
        self.predicate = predicate


class IdentityViolation(RuntimeError):
    """An in-domain binding produced a non-integral term or a false sum."""


class NotAProgression(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    den: str
    sign: str = "1"
    each: Optional[str] = None  # list param to repeat over; index variable is i


@dataclass(frozen=True)
class Form:
    name: str
    params: Tuple[str, ...]
    k: str
    n: str
    terms: Tuple[Term, ...]
    derived: Tuple[Tuple[str, str], ...] = ()
    guards: Tuple[Tuple[str, str], ...] = ()
    free: Optional[str] = None
    lists: Tuple[str, ...] = ()        # list-valued params
    zero_ok: Tuple[str, ...] = ()      # integer params allowed to be 0
    signs: Tuple[str, ...] = ()        # params in {-1, +1}
    rationals: Tuple[str, ...] = ()    # positive rational params
    anyint: Tuple[str, ...] = ()       # unrestricted integers
    sample: Mapping[str, Any] = field(default_factory=dict)
    grid: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class FamilyDef:
    id: str
    title: str
    anchor: str
    forms: Tuple[Form, ...]

    def form(self, name: Optional[str] = None) -> Form:
        if name is None:
            return self.forms[0]
        for f in self.forms:
            if f.name == name:
                return f
        raise DomainError(self.id, f"unknown form {name!r}")

    def signature(self) -> str:
        parts = []
        for f in self.forms:
            names = ", ".join(f.params)
            parts.append(f"{f.name}({names})" if len(self.forms) > 1 else f"({names})")
        return " | ".join(parts)


class CompiledForm:
    """A Form with every formula compiled once."""

    def __init__(self, fam: FamilyDef, form: Form):
        self.fam = fam
        self.form = form
        self.derived = [(name, compile_expr(src)) for name, src in form.derived]
        implicit = []
        for p in form.params:
            if p in form.anyint:
                continue
            if p in form.lists:
                if p in form.zero_ok:
                    implicit.append((f"{p} is a list of positive integers",
                                     compile_expr(f"all(x >= 1 for x in {p})")))
                else:
                    implicit.append((f"{p} is a non-empty list of positive integers",
                                     compile_expr(f"len({p}) >= 1 and all(x >= 1 for x in {p})")))
            elif p in form.signs:
                implicit.append((f"{p} in (-1, 1)", compile_expr(f"{p} == 1 or {p} == -1")))
            elif p in form.rationals:
                implicit.append((f"{p} > 0", compile_expr(f"{p} > 0")))
            elif p in form.zero_ok:
                implicit.append((f"{p} >= 0", compile_expr(f"{p} >= 0")))
            else:
                implicit.append((f"{p} >= 1", compile_expr(f"{p} >= 1")))
        self.implicit = implicit
        guards = [(label, compile_expr(src)) for label, src in form.guards]
        guards.append(("target denominator n >= 1", compile_expr(f"({form.n}) >= 1")))
        guards.append(("target numerator k > 0", compile_expr(f"({form.k}) > 0")))
        # each guard runs as soon as the names it reads are bound, so guards
        # protect the derived values that would otherwise fail to compute
        derived_names = [name for name, _ in self.derived]
        self.plan = []
        bound = set(form.params)
        pending = list(guards)
        for name, code in self.derived + [(None, None)]:
            ready = [g for g in pending if _reads(g[1]) & set(derived_names) <= bound]
            pending = [g for g in pending if g not in ready]
            self.plan.extend(("guard", label, code_) for label, code_ in ready)
            if name is not None:
                self.plan.append(("derive", name, code))
                bound.add(name)
        # guard labels whose outcome can change with the free variable
        moving = {form.free} if form.free else set()
        self.free_guards = {label for label, code in implicit if _reads(code) & moving}
        for kind, label, code in self.plan:
            if _reads(code) & moving:
                if kind == "derive":
                    moving.add(label)
                else:
                    self.free_guards.add(label)
        self.k = compile_expr(form.k)
        self.n = compile_expr(form.n)
        self.terms = [(compile_expr(t.den), compile_expr(t.sign), t.each) for t in form.terms]

    # -- binding handling
    def env_of(self, p: Mapping[str, Any]) -> Dict[str, Any]:
        missing = [name for name in self.form.params if name not in p]
        if missing:
            raise DomainError(self.fam.id, f"incomplete binding: missing {', '.join(missing)}")
        extra = [name for name in p if name not in self.form.params and name != "form"]
        if extra:
            raise DomainError(self.fam.id, f"unknown parameter(s): {', '.join(sorted(extra))}")
        env = {}
        for name in self.form.params:
            v = p[name]
            if name in self.form.lists:
                v = tuple(_num(x) for x in v)
            else:
                v = _num(v)
                if name not in self.form.rationals and not is_int(v):
                    raise DomainError(self.fam.id, f"{name} must be an integer")
            env[name] = v
        return env

    def check(self, p: Mapping[str, Any]) -> Tuple[Optional[str], Dict[str, Any]]:
        """Return (violated predicate or None, environment)."""
        env = self.env_of(p)
        for label, code in self.implicit:
            if not run(code, env):
                return label, env
        for kind, label, code in self.plan:
            if kind == "derive":
                try:
                    env[label] = run(code, env)
                except ZeroDivisionError:
                    return f"derived {label} is undefined (division by zero)", env
                continue
            try:
                ok = run(code, env)
            except ZeroDivisionError:
                ok = False
            if not ok:
                return label, env
        return None, env

    def n_value(self, env) -> Any:
        return run(self.n, env)

    def evaluate(self, p: Mapping[str, Any]) -> DecompRecord:
        bad, env = self.check(p)
        if bad is not None:
            raise DomainError(self.fam.id, bad)
        kv, nv = run(self.k, env), run(self.n, env)
        target = Fraction(kv) / Fraction(nv)
        terms: List[UnitTerm] = []
        for den_code, sign_code, each in self.terms:
            idx = range(len(env[each])) if each else [None]
            for i in idx:
                local = env if i is None else {**env, "i": i}
                try:
                    d = run(den_code, local)
                except ZeroDivisionError:
                    raise IdentityViolation(f"{self.fam.id}: zero divisor inside a term") from None
                sg = run(sign_code, local)
                if not is_int(d) or d == 0:
                    raise IdentityViolation(f"{self.fam.id}: non-integer denominator {d} at {dict(p)}")
                d = int(d)
                if d < 0:
                    sg, d = -sg, -d
                terms.append(UnitTerm(int(sg), d))
        if is_int(kv) and is_int(nv):
            k_out, n_out = int(kv), int(nv)
        else:
            k_out, n_out = target.numerator, target.denominator
        params = {name: p[name] for name in self.form.params}
        if len(self.fam.forms) > 1:
            params = {"form": self.form.name, **params}
        s = UnitFractionSum(target, tuple(terms), self.fam.id, tuple(params.items()))
        rec = make_record(k_out, n_out, s, self.fam.id, params)
        if not rec.verified:
            raise IdentityViolation(f"{self.fam.id}: sum does not equal target at {dict(p)}")
        return rec

    # -- sampling
    def draw(self, rng: random.Random) -> Optional[Dict[str, Any]]:
        """One random binding, or None when a constructive step fails.

        Sample specs are drawn in the order given, so later specs may be
        formulas ("expr") or random divisors ("divisor") of earlier draws;
        names starting with "_" are auxiliary and not part of the binding.
        """
        env: Dict[str, Any] = {}
        order = list(self.form.sample) + [p for p in self.form.params if p not in self.form.sample]
        for name in order:
            spec = self.form.sample.get(name)
            if spec is None:
                if name in self.form.signs:
                    spec = ("choice", (-1, 1))
                elif name in self.form.lists:
                    spec = ("list", 1, 3, 1, 12)
                elif name in self.form.rationals:
                    spec = ("rat", 24, 6)
                elif name in self.form.anyint:
                    spec = ("int", -12, 12)
                else:
                    spec = ("int", 0 if name in self.form.zero_ok else 1, 12)
            v = _draw(rng, spec, env)
            if v is None:
                return None
            env[name] = v
        return {name: env[name] for name in self.form.params}

    def grid_points(self, top: int = 6) -> Iterator[Dict[str, Any]]:
        axes = []
        for name in self.form.params:
            vals = self.form.grid.get(name)
            if vals is None:
                if name in self.form.signs:
                    vals = (-1, 1)
                elif name in self.form.lists:
                    lengths = (0, 1, 2) if name in self.form.zero_ok else (1, 2)
                    vals = [tuple(c) for L in lengths for c in itertools.product(range(1, top + 1), repeat=L)]
                elif name in self.form.rationals:
                    vals = sorted({Fraction(a, b) for a in range(1, top + 1) for b in range(1, top + 1)})
                elif name in self.form.anyint:
                    vals = range(-top, top + 1)
                else:
                    vals = range(0 if name in self.form.zero_ok else 1, top + 1)
            axes.append(list(vals))
        for combo in itertools.product(*axes):
            yield dict(zip(self.form.params, combo))


def _reads(code) -> set:
    names = set(code.co_names)
    for const in code.co_consts:
        if hasattr(const, "co_names"):   # generator expression bodies
            names |= _reads(const)
    return names


def _num(v):
    if isinstance(v, bool):
        raise TypeError("boolean is not a number")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, str):
        f = Fraction(v)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"unsupported parameter value {v!r}")


_SPEC_CODE: Dict[str, Any] = {}


def _spec_value(src: str, env):
    code = _SPEC_CODE.get(src)
    if code is None:
        code = _SPEC_CODE[src] = compile_expr(src)
    try:
        return run(code, env)
    except ZeroDivisionError:
        return None


def _draw(rng: random.Random, spec, env=None):
    kind = spec[0]
    if kind == "int":
        return rng.randint(spec[1], spec[2])
    if kind in ("choice", "pick"):
        return rng.choice(list(spec[1]))
    if kind == "list":
        _, lo_len, hi_len, lo, hi = spec
        return tuple(rng.randint(lo, hi) for _ in range(rng.randint(lo_len, hi_len)))
    if kind == "rat":
        _, num_hi, den_hi = spec
        return Fraction(rng.randint(1, num_hi), rng.randint(1, den_hi))
    if kind == "expr":
        v = _spec_value(spec[1], env or {})
        return int(v) if v is not None and is_int(v) else None
    if kind == "divisor":
        v = _spec_value(spec[1], env or {})
        if v is None or not is_int(v) or v < 1:
            return None
        return rng.choice(divisors(int(v)))
    if kind == "divisor_where":
        # a random divisor x of the value for which the condition holds
        v = _spec_value(spec[1], env or {})
        if v is None or not is_int(v) or v < 1:
            return None
        ok = [x for x in divisors(int(v)) if _spec_value(spec[2], {**(env or {}), "_x": x})]
        return rng.choice(ok) if ok else None
    raise ValueError(f"unknown sampling spec {spec!r}")
