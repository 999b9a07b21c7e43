"""Unit-fraction sums: data model, exact verification and brute-force oracles."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .arith import ArithmeticDomainError, divisors_from, factorize, tau


@dataclass(frozen=True, order=True)
class UnitTerm:
    """A signed unit fraction sign/den."""

    sign: int
    den: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if isinstance(self.den, bool) or not isinstance(self.den, int) or self.den < 1:
            raise ValueError(f"denominator must be a positive integer, got {self.den!r}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.sign, self.den)


@dataclass(frozen=True)
class UnitFractionSum:
    target: Fraction
    terms: Tuple[UnitTerm, ...]
    provenance: str = "oracle"
    params: Tuple[Tuple[str, Any], ...] = ()

    @classmethod
    def of(cls, target, dens: Sequence[int], provenance: str = "oracle", params=None):
        terms = tuple(UnitTerm(1, int(d)) for d in dens)
        return cls(Fraction(target), terms, provenance, tuple((params or {}).items()))

    def total(self) -> Fraction:
        return sum((t.value for t in self.terms), Fraction(0))

    def dens(self) -> Tuple[int, ...]:
        return tuple(t.den for t in self.terms)


def verify_sum(s: UnitFractionSum) -> bool:
    return s.total() == s.target


def canonicalize(s: UnitFractionSum) -> UnitFractionSum:
    terms = tuple(sorted(s.terms, key=lambda t: (-t.sign, t.den)))
    return UnitFractionSum(s.target, terms, s.provenance, s.params)


@dataclass(frozen=True)
class DecompRecord:
    """A unit-fraction sum plus metadata.  Build with :func:`make_record`."""

    k: int
    n: int
    sum: UnitFractionSum
    family: str
    params: Dict[str, Any] = field(default_factory=dict)
    verified: bool = False

    @property
    def terms(self) -> Tuple[UnitTerm, ...]:
        return self.sum.terms

    def to_json(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "n": self.n,
            "terms": [{"sign": t.sign, "den": str(t.den)} for t in self.terms],
            "family": self.family,
            "params": {key: _param_json(v) for key, v in self.params.items()},
            "verified": self.verified,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _param_json(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_param_json(x) for x in v]
    return v


def _param_from_json(v):
    if isinstance(v, list):
        return tuple(_param_from_json(x) for x in v)
    if isinstance(v, str):
        try:
            return Fraction(v) if "/" in v else int(v)
        except ValueError:
            return v          # form names and other labels
    return v


def make_record(k: int, n: int, s: UnitFractionSum, family: str,
                params: Optional[Dict[str, Any]] = None) -> DecompRecord:
    """The only place the verified flag is set: it is the result of verify_sum."""
    return DecompRecord(k, n, s, family, dict(params or {}), verify_sum(s))


def record_from_json(obj: Dict[str, Any]) -> DecompRecord:
    """Parse a DecompRecord; the stored flag is ignored and recomputed."""
    k, n = int(obj["k"]), int(obj["n"])
    if n < 1:
        raise ValueError("record has n < 1")
    terms = tuple(UnitTerm(int(t["sign"]), int(t["den"])) for t in obj["terms"])
    params = {key: _param_from_json(v) for key, v in obj.get("params", {}).items()}
    s = UnitFractionSum(Fraction(k, n), terms, obj.get("family", "oracle"), tuple(params.items()))
    return make_record(k, n, s, obj.get("family", "oracle"), params)


# -- two-term oracle ---------------------------------------------------------

def solve_two(target) -> List[UnitFractionSum]:
    """All pairs x <= y with 1/x + 1/y = 1/n, from divisors v of n^2."""
    target = Fraction(target)
    if target <= 0 or target.numerator != 1:
        raise ArithmeticDomainError(f"solve_two needs a unit fraction 1/n, got {target}")
    n = target.denominator
    out = []
    fac = {p: 2 * e for p, e in factorize(n).items()}
    for v in divisors_from(fac):
        if v > n:
            break
        out.append(UnitFractionSum.of(target, (n + v, n * (n + v) // v)))
    return out


def count_two(n: int) -> int:
    if n < 1:
        raise ArithmeticDomainError(f"count_two requires n >= 1, got {n}")
    return (tau(n * n) + 1) // 2


def count_two_brute(n: int) -> int:
    """Pairs counted directly: x runs over (n, 2n] and y = nx/(x - n) must be integral."""
    return sum(1 for x in range(n + 1, 2 * n + 1) if (n * x) % (x - n) == 0)


def _pairs_for(a: int, b: int, ymin: int) -> List[Tuple[int, int]]:
    # all y <= z with 1/y + 1/z = a/b (gcd(a,b)=1) and y >= ymin;
    # (a*y - b)(a*z - b) = b^2, so each pair is a divisor D <= b of b^2
    fac = {p: 2 * e for p, e in factorize(b).items()}
    out = []
    for D in divisors_from(fac):
        if D > b:
            break
        if (D + b) % a:
            continue
        E = b * b // D
        if (E + b) % a:
            continue
        y, z = (D + b) // a, (E + b) // a
        if y >= ymin:
            out.append((y, z))
    out.sort()
    return out


def _check_three(k: int, n: int) -> None:
    if k < 1 or n < 1:
        raise ArithmeticDomainError("solve_three requires k >= 1 and n >= 1")
    if k > 3 * n:
        raise ArithmeticDomainError(f"{k}/{n} > 3 has no 3-term positive decomposition")


def three_triples(k: int, n: int, find_all: bool = True) -> List[Tuple[int, int, int]]:
    """Sorted triples x <= y <= z with k/n = 1/x + 1/y + 1/z."""
    _check_three(k, n)
    found = []
    # x in (n/k, 3n/k]
    for x in range(n // k + 1, 3 * n // k + 1):
        num, den = k * x - n, n * x
        g = gcd(num, den)
        for y, z in _pairs_for(num // g, den // g, x):
            found.append((x, y, z))
            if not find_all:
                return found
    return found


def three_triples_scan(k: int, n: int) -> List[Tuple[int, int, int]]:
    """Independent enumeration: y scans its interval from the large end down."""
    _check_three(k, n)
    found = []
    for x in range(3 * n // k, n // k, -1):
        num, den = k * x - n, n * x   # residual for 1/y + 1/z
        if num <= 0:
            continue
        ylo = max(x, -(-den // num))
        yhi = 2 * den // num
        for y in range(yhi, ylo - 1, -1):
            rnum = num * y - den
            if rnum <= 0:
                continue
            zden = den * y
            if zden % rnum == 0:
                z = zden // rnum
                if z >= y:
                    found.append((x, y, z))
    found.sort()
    return found


def solve_three(k: int, n: int, find_all: bool = True) -> List[UnitFractionSum]:
    target = Fraction(k, n)
    return [UnitFractionSum.of(target, t) for t in three_triples(k, n, find_all)]
