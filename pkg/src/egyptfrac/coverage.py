"""Residue-class algebra, coverage reports and reachability searches."""
from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import divisors, lcm, lcm_many
from .families import (DomainError, NotAProgression, compiled, family_ids, get)
from .families.core import CompiledForm
from .residue import ResidueClass

__all__ = [
    "ResidueClass", "CoverageReport", "split", "covers", "progressions", "mordell_check",
    "MORDELL_SQUARES", "MORDELL_PRINTED", "integer_size_reachable", "integer_size_brute",
    "rational_size_reachable", "shape_discrepancies", "multiple_chain",
]

GRID_TOP = 12          # non-free parameters range over 1..GRID_TOP
T0_SCAN = 64           # first admissible free value must appear by then
CHECK_RUN = 100        # consecutive members verified per progression
LIFT_CAP = 20_000      # lifts r + jM examined first per residue
FULL_CAP = 20_000_000  # longest lift window used to settle a period

MORDELL_SQUARES = (1, 121, 169, 289, 361, 529)
MORDELL_PRINTED = (12, 112, 132, 172, 192, 232)


def split(c: ResidueClass, factor: int) -> List[ResidueClass]:
    """Partition {mt - g} into `factor` classes mod m*factor, offsets ascending."""
    if factor < 2:
        raise ValueError("factor must be >= 2")
    out = []
    for i in range(factor):
        # t = factor*t' - i, so mt - g = (m*factor)t' - (g + m*i)
        t0 = -(-(c.t0 + i) // factor)
        out.append(ResidueClass.of(c.m * factor, c.g + c.m * i, t0))
    return out


# -- progressions from the registry ------------------------------------------

@dataclass(frozen=True)
class Progression:
    cls: ResidueClass
    family: str
    form: str
    free: str
    binding: Tuple[Tuple[str, Any], ...]   # non-free parameters
    t0: int                                # first admissible free value

    def binding_dict(self) -> Dict[str, Any]:
        return dict(self.binding)

    def to_json(self) -> Dict[str, Any]:
        return {"family": self.family, "form": self.form, "free": self.free,
                "binding": {key: _jsonable(v) for key, v in self.binding},
                "free_start": self.t0, "progression": self.cls.to_json()}


def _jsonable(v):
    if isinstance(v, tuple):
        return [str(x) for x in v]
    return str(v)


def _axis(cf: CompiledForm, name: str, top: int):
    form = cf.form
    if name == "k":
        return (4,)
    if name in form.signs:
        return (-1, 1)
    if name in form.lists:
        vals = [(a,) for a in range(1, top + 1)]
        return ([()] + vals) if name in form.zero_ok else vals
    if name in form.anyint:
        return range(-top, top + 1)
    if name in form.rationals:
        return ()
    return range(0 if name in form.zero_ok else 1, top + 1)


def _all_positive_small(rec) -> bool:
    return len(rec.terms) <= 3 and all(t.sign == 1 for t in rec.terms)


@lru_cache(maxsize=None)
def progressions(fid: str, top: int = GRID_TOP) -> Tuple[Progression, ...]:
    """Distinct 4/n progressions of one family over the configured parameter grid.

    Each kept progression was checked on CHECK_RUN consecutive free values:
    all in domain, n linear in the free variable, target numerator 4, and the
    decomposition has at most three positive terms at both ends of the run.
    """
    fam = get(fid)
    best: Dict[Tuple[int, int], Progression] = {}
    for form in fam.forms:
        if form.free is None or form.rationals:
            continue
        cf = compiled(fam.id, form.name)
        names = [p for p in form.params if p != form.free]
        axes = [_axis(cf, p, top) for p in names]
        start = 0 if form.free in form.zero_ok else 1
        if form.free in form.anyint:
            start = -T0_SCAN
        for combo in itertools.product(*axes):
            base = dict(zip(names, combo))
            prog = _probe(cf, base, start, best)
            if prog is not None:
                best[(prog.cls.m, prog.cls.g)] = prog
    return tuple(sorted(best.values(), key=lambda p: (p.cls.m, p.cls.first, p.form)))


def _probe(cf: CompiledForm, base: Dict[str, Any], start: int,
           seen: Dict[Tuple[int, int], Progression]) -> Optional[Progression]:
    free = cf.form.free
    t0 = None
    for t in range(start, start + T0_SCAN):
        try:
            bad, env = cf.check({**base, free: t})
        except DomainError:
            return None
        if bad is None:
            t0 = t
            break
        if bad not in cf.free_guards:
            return None      # fails for every value of the free variable
    if t0 is None:
        return None
    n0 = cf.n_value(env)
    bad, env1 = cf.check({**base, free: t0 + 1})
    if bad is not None:
        return None
    m = cf.n_value(env1) - n0
    if m < 1:
        return None
    cls = ResidueClass.of(m, m * t0 - n0, 1)
    old = seen.get((cls.m, cls.g))
    if old is not None and old.cls.first <= n0:
        return None          # nothing new
    try:
        first = cf.evaluate({**base, free: t0})
    except DomainError:
        return None
    if first.k != 4 or not _all_positive_small(first):
        return None
    for i in range(2, CHECK_RUN):
        bad, env = cf.check({**base, free: t0 + i})
        if bad is not None or cf.n_value(env) != n0 + m * i:
            return None
    last = cf.evaluate({**base, free: t0 + CHECK_RUN - 1})
    if last.k != 4 or not _all_positive_small(last):
        return None
    # index the class so that its first member is the family's first n
    cls = ResidueClass(cls.m, cls.g, (n0 + cls.g) // cls.m)
    return Progression(cls, cf.fam.id, cf.form.name, free, tuple(sorted(base.items())), t0)


def _family_set(family_ids_: Optional[Iterable[str]]) -> List[str]:
    if family_ids_ is None:
        return family_ids()
    return [get(f).id for f in family_ids_]


# -- coverage ----------------------------------------------------------------

@dataclass
class ResidueStatus:
    residue: int
    cls: ResidueClass
    status: str                       # covered | uncovered | undecided
    families: List[str] = field(default_factory=list)
    contributors: List[Dict[str, Any]] = field(default_factory=list)
    witness: Optional[int] = None     # an uncovered member
    period: Optional[int] = None

    def to_json(self) -> Dict[str, Any]:
        out = {"residue": self.residue, "class": self.cls.render(), "status": self.status,
               "families": self.families, "contributors": self.contributors}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.period is not None:
            out["period"] = str(self.period)
        return out


@dataclass
class CoverageReport:
    modulus: int
    families: List[str]
    grid_top: int
    lift_cap: int
    residues: List[ResidueStatus]

    def status(self, residue: int) -> str:
        for r in self.residues:
            if r.residue == residue % self.modulus:
                return r.status
        raise KeyError(residue)

    def entry(self, residue: int) -> ResidueStatus:
        for r in self.residues:
            if r.residue == residue % self.modulus:
                return r
        raise KeyError(residue)

    def to_json(self) -> Dict[str, Any]:
        return {"modulus": self.modulus, "families": self.families,
                "grid": f"non-free parameters in 1..{self.grid_top}, k = 4, lists of length 1",
                "lift_cap": self.lift_cap, "full_cap": FULL_CAP,
                "semantics": "a residue is covered when the union of family progressions "
                             "contains every member of its class",
                "residues": [r.to_json() for r in self.residues]}


def covers(family_ids_: Optional[Iterable[str]], modulus: int,
           residues: Optional[Sequence[int]] = None, top: int = GRID_TOP,
           lift_cap: int = LIFT_CAP, full_cap: int = FULL_CAP) -> CoverageReport:
    """Which classes n = r (mod modulus) the registry covers.

    A class is "covered" when every member lies in some family progression;
    this is proved by checking members up to a full period of the union past
    the largest starting point.  A member n >= 2 in no progression makes the
    class "uncovered" (with that member as witness); a period too long to
    check leaves it "undecided".
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    fams = _family_set(family_ids_)
    progs: List[Progression] = []
    for fid in fams:
        progs.extend(progressions(fid, top))
    progs.sort(key=lambda p: (p.cls.m, p.cls.first, p.family, p.form))
    rs = range(modulus) if residues is None else sorted({r % modulus for r in residues})
    if len(progs) >= 0xFFFF:
        raise ValueError("too many progressions")
    out = [_cover_residue(r, modulus, progs, lift_cap, full_cap) for r in rs]
    return CoverageReport(modulus, fams, top, lift_cap, out)


def _cover_residue(r: int, M: int, progs: Sequence[Progression], cap: int,
                   full_cap: int) -> ResidueStatus:
    cls = ResidueClass.of(M, (-r) % M, 1)
    base = cls.first if cls.first >= 2 else cls.first + M   # 4/1 is out of range
    compatible = []
    for idx, p in enumerate(progs):
        m, g = p.cls.m, p.cls.g
        h = gcd(m, M)
        if (base + g) % h:
            continue
        step = m // h
        # smallest j >= 0 with base + j*M in the progression's residue class
        j0 = ((-g - base) // h) * pow(M // h, -1, step) % step if step > 1 else 0
        need = p.cls.first - base
        jmin = 0 if need <= 0 else -(-need // M)
        if j0 < jmin:
            j0 += step * (-(-(jmin - j0) // step))
        compatible.append((idx, j0, step))
    size = cap
    while True:
        # owner of each lift base + j*M: the smallest-modulus progression containing it
        owner = array("H", [0xFFFF]) * size
        for idx, j0, step in reversed(compatible):
            if j0 < size:
                owner[j0::step] = array("H", [idx]) * len(range(j0, size, step))
        try:
            miss = owner.index(0xFFFF)
        except ValueError:
            miss = None
        if miss is not None:
            return ResidueStatus(r, cls, "uncovered", witness=base + miss * M)
        used = sorted(set(owner))
        period = lcm_many([M] + [progs[i].cls.m for i in used])
        start = max(progs[i].cls.first for i in used)
        # past `start` the union of `used` repeats with this period
        needed = max(0, -(-(start - base) // M)) + period // M
        if needed <= size or needed > full_cap:
            break
        size = needed
    fams = sorted({progs[i].family for i in used})
    contributors = []
    for i in used:
        p = progs[i]
        entry = p.to_json()
        entry["restricted"] = ResidueClass.of(lcm(p.cls.m, M), _meet_offset(p.cls, cls), 1).render()
        contributors.append(entry)
    status = "covered" if needed <= size else "undecided"
    return ResidueStatus(r, cls, status, fams, contributors, period=period)


def _meet_offset(a: ResidueClass, b: ResidueClass) -> int:
    # offset g of the intersection class n = -g (mod lcm(a.m, b.m))
    L = lcm(a.m, b.m)
    for n in range(a.residue or a.m, L + a.m + 1, a.m):
        if n % b.m == b.residue:
            return (-n) % L
    raise ValueError("classes do not meet")


def mordell_check(family_ids_: Optional[Iterable[str]] = None, printed: bool = False,
                  table_rows: Optional[Iterable[Any]] = None, top: int = GRID_TOP) -> Dict[str, Any]:
    """Coverage of the six residues mod 840 singled out in the literature.

    The residues are read as the squares 1, 11^2, 13^2, 17^2, 19^2, 23^2;
    ``printed=True`` uses the digits as printed instead.  With table rows
    (objects with a ``w`` attribute) the report also counts rows per residue.
    """
    residues = MORDELL_PRINTED if printed else MORDELL_SQUARES
    rep = covers(family_ids_, 840, residues, top)
    rows = []
    for r in residues:
        e = rep.entry(r)
        rows.append({"residue": r, "status": e.status, "families": e.families,
                     "witness": None if e.witness is None else str(e.witness)})
    out = {"modulus": 840, "reading": "printed digits" if printed else "squares", "residues": rows}
    if table_rows is not None:
        counts = {r: 0 for r in residues}
        for row in table_rows:
            w = row.w if hasattr(row, "w") else int(row["w"])
            if w % 840 in counts:
                counts[w % 840] += 1
        out["table_counts"] = {str(r): c for r, c in counts.items()}
    return out


# -- reachability ------------------------------------------------------------

def integer_size_reachable(n: int, k: int) -> Optional[Tuple[int, int, int]]:
    """A witness (c, d, t), c <= d, with k*lcm(c, d)*t = n + c + d, or None.

    Writing c = g*c', d = g*d' with gcd(c', d') = 1 forces g | n, d' | n/g + c'
    and c' | n/g + d', which makes the search finite and exhaustive: None is
    a proof that no witness exists.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    for g in divisors(n):
        n1 = n // g
        c1 = 1
        while k * c1 <= 2 or c1 * (k * c1 - 2) <= n1:
            for d1 in divisors(n1 + c1):
                if d1 < c1 or gcd(c1, d1) != 1 or (n1 + d1) % c1:
                    continue
                total = n1 + c1 + d1
                if total % (k * c1 * d1) == 0:
                    return g * c1, g * d1, total // (k * c1 * d1)
            c1 += 1
    return None


def integer_size_brute(n: int, k: int = 4) -> Optional[Tuple[int, int, int]]:
    """Plain double loop over c <= d <= bound; the reference for the search above.

    k*max(c, d) <= k*lcm(c, d) <= n + 2*max(c, d) bounds max(c, d) by n/(k-2).
    """
    if k < 3:
        raise ValueError("the plain bound needs k >= 3")
    bound = -(-n // (k - 2))
    for c in range(1, bound + 1):
        for d in range(c, bound + 1):
            total = n + c + d
            l = c * d // gcd(c, d)
            if total % (k * l) == 0:
                return c, d, total // (k * l)
    return None


def rational_size_reachable(n: int, k: int, bound: int) -> Optional[Tuple[int, int, int, int]]:
    """A witness (e, u, f, t), e <= u <= bound, f | e + u, k*lcm(e, u)*t = n + (e+u)/f.

    None means none within the bound, not that none exists.
    """
    if n < 1 or k < 1 or bound < 1:
        raise ValueError("need n, k, bound >= 1")
    for e in range(1, bound + 1):
        for u in range(e, bound + 1):
            w = k * (e * u // gcd(e, u))
            for f in divisors(e + u):
                total = n + (e + u) // f
                if total % w == 0:
                    return e, u, f, total // w
    return None


def _shape_of(n: int, k: int, x: int, y: int, z: int) -> Optional[Tuple[int, int, int, int]]:
    # k/n = 1/x + 1/y + 1/z read as x = wt, y = fnx/e, z = fnx/u with w = lcm(e, u)
    re, ru = Fraction(n * x, y), Fraction(n * x, z)
    f = lcm(re.denominator, ru.denominator)
    e, u = int(re * f), int(ru * f)
    w = lcm(e, u)
    if x % w or k * x - n != (e + u) // f or (e + u) % f:
        return None
    return (min(e, u), max(e, u), f, x // w)


def shape_discrepancies(n_max: int = 500, k: int = 4, bound: Optional[int] = None) -> Dict[str, Any]:
    """Compare rational_size_reachable with oracle triples of the matching shape.

    A triple has the shape when, for some ordering, it reads x = wt,
    y = wtfn/e, z = wtfn/u with e, u within the bound.  Differences are
    reported, not asserted.
    """
    from .egyptian import three_triples

    shaped, found, missing, extra = 0, 0, [], []
    for n in range(2, n_max + 1):
        if k > 3 * n:
            continue
        cap = bound or n
        has_shape = False
        for x, y, z in three_triples(k, n):
            for a, b, c in ((x, y, z), (y, x, z), (z, x, y)):
                sh = _shape_of(n, k, a, b, c)
                if sh is not None and sh[1] <= cap:
                    has_shape = True
                    break
            if has_shape:
                break
        wit = rational_size_reachable(n, k, cap)
        shaped += has_shape
        found += wit is not None
        if has_shape and wit is None:
            missing.append(n)
        if wit is not None and not has_shape:
            extra.append(n)
    return {"n_max": n_max, "k": k, "bound": bound or "n", "oracle_shaped": shaped,
            "rational_found": found, "shaped_but_not_found": missing,
            "found_but_not_shaped": extra}


def multiple_chain(a_values: Sequence[int] = (3, 5, 11), t_max: int = 50) -> List[Dict[str, Any]]:
    """Check x(at - (a-1)) + 1 = a(xt - b) along the chain x = a^2 - 1, b = x - a.

    Each entry also confirms x + 1 = a(x - b), the condition for the identity.
    """
    out = []
    for a in a_values:
        x = a * a - 1
        b = x - a
        ok = x + 1 == a * (x - b)
        for t in range(1, t_max + 1):
            ok = ok and x * (a * t - (a - 1)) + 1 == a * (x * t - b)
        lhs = ResidueClass.of(a * x, x * (a - 1) - 1)
        out.append({"a": a, "x": x, "b": b, "class": lhs.render(),
                    "factored": f"{a}({x}t-{b})", "ok": ok})
    return out
