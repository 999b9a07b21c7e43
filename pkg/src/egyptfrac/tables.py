"""Witness tables: (b, r, v, s) rows for primes 4a+1, reachability rows, the mod-840 search."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import divisors_from, factorize, is_prime
from .coverage import integer_size_reachable, rational_size_reachable
from .egyptian import DecompRecord
from .families import DomainError, IdentityViolation, compiled

__all__ = [
    "BrvsRow", "WitnessRow", "Mod840Row", "TableDomainError", "B_MAX", "S_MAX",
    "load_paper_rows", "verify_brvs_row", "brvs_record", "search_brvs", "search_integer_witness",
    "search_abc_mod840", "emit_table", "render_table",
]

B_MAX = 64
S_MAX = 10**4
RATIONAL_BOUND = 200


class TableDomainError(ValueError):
    pass


@dataclass(frozen=True)
class BrvsRow:
    w: int
    b: int
    r: int
    v: int
    s: int

    @property
    def third(self) -> Optional[int]:
        """The third denominator rvws/((4rv-1)s - rw), when it is a positive integer."""
        D = (4 * self.r * self.v - 1) * self.s - self.r * self.w
        num = self.r * self.v * self.w * self.s
        return num // D if D > 0 and num % D == 0 else None

    def to_json(self) -> Dict[str, str]:
        return {key: str(getattr(self, key)) for key in ("w", "b", "r", "v", "s")}


@dataclass(frozen=True)
class WitnessRow:
    n: int
    integer: Optional[Tuple[int, int, int]]            # (c, d, t)
    rational: Optional[Tuple[int, int, int, int]]      # (e, u, f, t)

    def to_json(self) -> Dict[str, Any]:
        return {"n": str(self.n),
                "integer": None if self.integer is None else [str(x) for x in self.integer],
                "rational": None if self.rational is None else [str(x) for x in self.rational]}


@dataclass(frozen=True)
class Mod840Row:
    m: int
    a: int
    b: int
    c: int
    form: str

    def to_json(self) -> Dict[str, str]:
        return {"m": str(self.m), "a": str(self.a), "b": str(self.b), "c": str(self.c),
                "form": self.form}


def load_paper_rows(which: str) -> List[BrvsRow]:
    """The printed rows: which is "4a1" or "120a1"."""
    if which not in ("4a1", "120a1"):
        raise TableDomainError(f"unknown table {which!r}")
    text = resources.files("egyptfrac").joinpath("data").joinpath(f"brvs_{which}.csv").read_text()
    return [BrvsRow(*(int(row[key]) for key in ("w", "b", "r", "v", "s")))
            for row in csv.DictReader(io.StringIO(text))]


def brvs_record(row: BrvsRow) -> DecompRecord:
    """Evaluate the row through F51; raises DomainError naming the failed condition."""
    return compiled("F51", "row").evaluate(
        {"w": row.w, "b": row.b, "r": row.r, "v": row.v, "s": row.s})


def verify_brvs_row(row: BrvsRow) -> bool:
    """rv = ((4b-1)w+1)/4, (4rv-1)s - rw > 0 dividing rvws, and the F51 sum verifies."""
    try:
        return brvs_record(row).verified
    except (DomainError, IdentityViolation):
        return False


def search_brvs(w: int, b_max: int = B_MAX, s_max: int = S_MAX) -> Optional[BrvsRow]:
    """The smallest valid (b, r, s) in lexicographic order, or None within the caps.

    With P = rv = ((4b-1)w+1)/4 the conditions reduce to E = (4b-1)s - r > 0
    dividing Ps.  Such an E divides P*r and is -r mod (4b-1), so the search runs
    over divisors of P*r instead of over s.
    """
    if w < 2 or w % 4 != 1 or not is_prime(w):
        raise TableDomainError(f"{w} is not a prime of the form 4a+1")
    for b in range(1, b_max + 1):
        q = 4 * b - 1
        P = (q * w + 1) // 4
        fP = factorize(P)
        for r in divisors_from(fP):
            f = dict(fP)
            for p, e in factorize(r).items():
                f[p] = f.get(p, 0) + e
            for E in divisors_from(f):
                if (E + r) % q:
                    continue
                s = (E + r) // q
                if s > s_max:
                    break
                if (P * s) % E == 0:
                    row = BrvsRow(w, b, r, P // r, s)
                    if verify_brvs_row(row):
                        return row
    return None


def search_integer_witness(n: int, bound: int = RATIONAL_BOUND) -> WitnessRow:
    """Integer-size witness (exhaustive) and a rational-size witness with e, u <= bound."""
    if n < 2:
        raise TableDomainError("n must be >= 2")
    return WitnessRow(n, integer_size_reachable(n, 4), rational_size_reachable(n, 4, bound))


def _f17_hit(m: int, a: int, b: int, c: int) -> Optional[str]:
    # the F17 conditions written out; the hit is re-checked through the registry
    x = m + c
    if x % 4 == 0:
        y = x * (a + b) * m
        if y % (4 * a * c) == 0 and y % (4 * b * c) == 0:
            return "form1"
    x = m * c + 1
    if (x * m) % 4 == 0:
        y = x * (a + b)
        if y % (4 * a * c) == 0 and y % (4 * b * c) == 0:
            return "form2"
    return None


def search_abc_mod840(m_max: int, c_max: int = 100, b_max: int = 11, per_m: int = 1,
                      m_values: Optional[Iterable[int]] = None) -> List[Mod840Row]:
    """F17 parameters for m = 1 (mod 840), m <= m_max, in the listing's loop order.

    For each m: c = 1..c_max-1, then a while a < (m+c)/4 or a < (mc+1)/4,
    then b = 1..b_max-1; form1 is tried before form2.  The listing's
    truncated conditionals are completed to exactly the F17 conditions, and
    every hit is evaluated through the registry.  At most ``per_m`` rows are
    kept for each m.
    """
    ms = range(1, m_max + 1, 840) if m_values is None else m_values
    out: List[Mod840Row] = []
    for m in ms:
        if m % 840 != 1:
            raise TableDomainError(f"{m} is not 1 mod 840")
        found = 0
        for c in range(1, c_max):
            if found >= per_m:
                break
            if (m + c) % 4 and (m * c + 1) * m % 4:
                continue          # neither form can hold for this c
            a_end = max((m + c) // 4, (m * c + 1) // 4)
            for a in range(1, a_end):
                for b in range(1, b_max):
                    form = _f17_hit(m, a, b, c)
                    if form is None:
                        continue
                    rec = compiled("F17", form).evaluate({"m": m, "a": a, "b": b, "c": c})
                    if not rec.verified:
                        raise IdentityViolation(f"F17 {form} failed at m={m}, a={a}, b={b}, c={c}")
                    out.append(Mod840Row(m, a, b, c, form))
                    found += 1
                    if found >= per_m:
                        break
                if found >= per_m:
                    break
    return out


_HEADERS = {BrvsRow: ["w", "b", "r", "v", "s"], Mod840Row: ["m", "a", "b", "c", "form"]}


def _csv_rows(rows: Sequence[Any]) -> Tuple[List[str], List[List[str]]]:
    if not rows:
        return _HEADERS[BrvsRow], []
    kind = type(rows[0])
    if kind is WitnessRow:
        header = ["n", "c", "d", "t", "e", "u", "f", "t_rational"]
        body = []
        for row in rows:
            ints = [str(x) for x in row.integer] if row.integer else ["", "", ""]
            rats = [str(x) for x in row.rational] if row.rational else ["", "", "", ""]
            body.append([str(row.n)] + ints + rats)
        return header, body
    header = _HEADERS[kind]
    return header, [[str(getattr(row, key)) for key in header] for row in rows]


def render_table(rows: Sequence[Any], fmt: str = "csv") -> str:
    """Byte-stable text: fixed columns, LF endings, integers as decimal strings.

    (b, r, v, s) rows are re-verified through F51 first; JSON output carries
    each row's DecompRecord.
    """
    for row in rows:
        if isinstance(row, BrvsRow) and not verify_brvs_row(row):
            raise TableDomainError(f"row for w={row.w} does not verify")
    if fmt == "csv":
        header, body = _csv_rows(rows)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue()
    if fmt == "json":
        items = []
        for row in rows:
            item = row.to_json()
            if isinstance(row, BrvsRow):
                item["record"] = brvs_record(row).to_json()
            items.append(item)
        return json.dumps(items, indent=2, sort_keys=True) + "\n"
    raise TableDomainError(f"unknown format {fmt!r}")


def emit_table(rows: Sequence[Any], fmt: str, path: str) -> None:
    text = render_table(rows, fmt)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
