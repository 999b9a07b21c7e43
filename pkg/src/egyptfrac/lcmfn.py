"""Counting, summing and multiplying the x with lcm(x, b) = a.

Q_a[b], SQ_a[b] and MQ_a[b] are defined by enumeration (q_brute), which is
the ground truth.  q_closed is an accelerator derived from the prime
exponents, and the suite below checks every series, product and congruence
identity against the enumeration, reporting each mismatch as a finding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, isqrt, prod
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from .arith import divisors, factorize, gcd, is_prime, lcm, phi, sigma, tau
from .egyptian import count_two, count_two_brute, solve_two

__all__ = [
    "LcmDomainError", "QTriple", "q_brute", "q_closed", "full_split", "literal_split",
    "sum_q_over_divisors", "series_suite", "restricted_sum_x", "restricted_sum_x_closed",
    "restricted_sum_p", "restricted_sum_p_closed", "fermat_quotient", "fermat_congruence",
    "corollary_checks", "mq_printed_report", "run_suite",
]


class LcmDomainError(ValueError):
    pass


@dataclass(frozen=True)
class QTriple:
    a: int
    b: int
    Q: int
    SQ: int
    MQ: int

    def to_json(self) -> Dict[str, str]:
        return {"a": str(self.a), "b": str(self.b), "Q": str(self.Q), "SQ": str(self.SQ),
                "MQ": str(self.MQ)}


def _solutions(a: int, b: int) -> List[int]:
    # lcm(x, b) = a forces x | a
    if a < 1 or b < 1:
        raise LcmDomainError("need a >= 1 and b >= 1")
    return [x for x in divisors(a) if lcm(x, b) == a]


def q_brute(a: int, b: int) -> QTriple:
    """Enumerate x | a with lcm(x, b) = a.  Q = 0 (and MQ = 1) when b does not divide a."""
    xs = _solutions(a, b)
    return QTriple(a, b, len(xs), sum(xs), prod(xs))


def full_split(a: int, b: int) -> Tuple[int, int]:
    """(k, d) with a = k*d: k collects p^v_p(a) over the primes where b has full exponent.

    Those are exactly the primes whose exponent in x is free; every other
    prime must appear in x to its full power.
    """
    if b < 1 or a % b:
        raise LcmDomainError(f"{b} does not divide {a}")
    k = 1
    fb = factorize(b)
    for p, e in factorize(a).items():
        if fb.get(p, 0) == e:
            k *= p**e
    return k, a // k


def literal_split(a: int, b: int) -> Tuple[int, int]:
    """(k, d) with k collecting p^v_p(a) over every prime dividing b."""
    if b < 1 or a % b:
        raise LcmDomainError(f"{b} does not divide {a}")
    k = 1
    fb = factorize(b)
    for p, e in factorize(a).items():
        if p in fb:
            k *= p**e
    return k, a // k


def _pow_half(k: int, t: int) -> int:
    # k^(t/2) exactly; t is odd only when k is a perfect square
    if t % 2 == 0:
        return k ** (t // 2)
    r = isqrt(k)
    if r * r != k:
        raise ArithmeticError(f"{k}^({t}/2) is not an integer")
    return r**t


def q_closed(a: int, b: int, split: Callable[[int, int], Tuple[int, int]] = full_split) -> QTriple:
    """Q = tau(k), SQ = d*sigma(k), MQ = d^tau(k) * k^(tau(k)/2) for a = d*k."""
    k, d = split(a, b)
    t = tau(k)
    return QTriple(a, b, t, d * sigma(k), d**t * _pow_half(k, t))


def sum_q_over_divisors(n: int) -> int:
    """Sum of Q_n[x] over x | n, by enumeration."""
    return sum(q_brute(n, x).Q for x in divisors(n))


def _check(name: str, lhs, rhs, **args) -> Dict[str, Any]:
    return {"identity": name, "args": {key: str(v) for key, v in args.items()},
            "lhs": str(lhs), "rhs": str(rhs), "ok": lhs == rhs}


def _series_prefix(p: int, s_max: int) -> List[Dict[str, Any]]:
    # sum and product of Q_pj[p] for j <= s, every s <= s_max, from one pass
    out, total, product = [], 0, 1
    for s in range(1, s_max + 1):
        q = q_brute(p * s, p).Q
        total, product = total + q, product * q
        out.append(_check("sum Q_pj[p], j<=s", total, 2 * s - s // p, p=p, s=s))
        out.append(_check("prod Q_pj[p], j<=s", product, 2 ** (s - s // p), p=p, s=s))
    return out


def _series_prime_power(p: int, k: int) -> List[Dict[str, Any]]:
    pk = p**k
    qs = [q_brute(pk, x).Q for x in divisors(pk)]
    ratios = [Fraction(tau(x), q) for x, q in zip(divisors(pk), qs)]
    out = []
    if k >= 1:
        out.append(_check("sum Q_p^k[x], x|p^k", sum(qs), 2 * k + 1, p=p, k=k))
        out.append(_check("prod Q_p^k[x], x|p^k", prod(qs), k + 1, p=p, k=k))
    out.append(_check("sum tau(x)/Q_p^k[x], x|p^k", sum(ratios), comb(k + 1, 2) + 1, p=p, k=k))
    out.append(_check("prod tau(x)/Q_p^k[x], x|p^k", prod(ratios), factorial(k), p=p, k=k))
    return out


def _series_coprime(p: int, k: int, t: int) -> List[Dict[str, Any]]:
    qs = [q_brute(t * p**r, p**r).Q for r in range(k + 1)]
    return [_check("sum Q_tp^r[p^r], r<=k", sum(qs), comb(k + 2, 2), p=p, k=k, t=t),
            _check("prod Q_tp^r[p^r], r<=k", prod(qs), factorial(k + 1), p=p, k=k, t=t)]


def _euler(p: int) -> List[Dict[str, Any]]:
    qs = [q_brute(p * j, p).Q for j in range(1, p + 1)]
    return [_check("sum Q_pj[p], j<=p = p + phi(p)", sum(qs), p + phi(p), p=p),
            _check("prod Q_pj[p], j<=p = 2^phi(p)", prod(qs), 2 ** phi(p), p=p)]


def series_suite(p: int, s: int, k: int, t: int) -> List[Dict[str, Any]]:
    """Check every series and product identity at one (p, s, k, t); left sides by enumeration."""
    if not is_prime(p):
        raise LcmDomainError(f"{p} is not prime")
    if s < 1 or k < 0 or t < 1 or t % p == 0:
        raise LcmDomainError("need s >= 1, k >= 0, t >= 1 with p not dividing t")
    return (_series_prefix(p, s)[-2:] + _series_prime_power(p, k) + _series_coprime(p, k, t)
            + _euler(p))


def restricted_sum_x(n: int, x: int) -> int:
    """Sum of Q_n[y] over the multiples y of x dividing n, by enumeration."""
    if x < 1 or n % x:
        raise LcmDomainError(f"{x} does not divide {n}")
    return sum(q_brute(n, y).Q for y in divisors(n) if y % x == 0)


def restricted_sum_x_closed(n: int, x: int) -> int:
    """tau(x) * tau(n^2 / prod p^(alpha_p + a_p)) over the primes p of x."""
    if x < 1 or n % x:
        raise LcmDomainError(f"{x} does not divide {n}")
    fn = factorize(n)
    rest = n * n
    for p, a in factorize(x).items():
        rest //= p ** (fn[p] + a)
    return tau(x) * tau(rest)


def restricted_sum_p(n: int, p: int, d: int) -> int:
    """Sum of Q_n[y] over the y | n divisible by p^d, by enumeration."""
    if d < 1 or not is_prime(p) or n % p**d:
        raise LcmDomainError(f"{p}^{d} must divide {n} with d >= 1 and {p} prime")
    return restricted_sum_x(n, p**d)


def restricted_sum_p_closed(n: int, p: int, d: int) -> int:
    """tau(n^2) - d * tau(n^2 / p^(2 alpha))."""
    if d < 1 or not is_prime(p) or n % p**d:
        raise LcmDomainError(f"{p}^{d} must divide {n} with d >= 1 and {p} prime")
    alpha = factorize(n)[p]
    return tau(n * n) - d * tau(n * n // p ** (2 * alpha))


def fermat_quotient(p: int, k: int) -> int:
    if p < 3 or not is_prime(p) or k % p == 0:
        raise LcmDomainError("need an odd prime p not dividing k")
    return (k ** (p - 1) - 1) // p


def fermat_congruence(p: int, d: int) -> Dict[str, Any]:
    """Whether dp divides q_p(dp + 1) + SQ_dp[p], with SQ by enumeration."""
    if p < 3 or not is_prime(p) or d < 1:
        raise LcmDomainError("need an odd prime p and d >= 1")
    k = d * p + 1
    q = fermat_quotient(p, k)
    sq = q_brute(k - 1, p).SQ
    return {"p": p, "d": d, "k": k, "q": str(q), "SQ": str(sq),
            "residue": str((q + sq) % (d * p)), "ok": (q + sq) % (d * p) == 0}


def corollary_checks(n_max: int = 200) -> List[Dict[str, Any]]:
    """The corollaries: multiplicativity, the prime-pair case, prime powers and Q_pk[p]."""
    out = []
    for a in range(1, n_max + 1):
        for m in divisors(a):
            n = a // m
            if gcd(m, n) == 1:
                out.append(_check("Q_mn[mn] = Q_mn[m] Q_mn[n], gcd(m, n) = 1",
                                  q_brute(a, a).Q, q_brute(a, m).Q * q_brute(a, n).Q, m=m, n=n))
    primes = [p for p in range(2, isqrt(n_max) + 2) if is_prime(p)]
    for m in primes:
        for n in primes:
            qm, qn = q_brute(m * n, m).Q, q_brute(m * n, n).Q
            out.append(_check("Q_mn[mn] = Q_mn[m] + Q_mn[n], m, n prime",
                              q_brute(m * n, m * n).Q, qm + qn, m=m, n=n))
            out.append(_check("Q_mn[m] + Q_mn[n] = Q_mn[m] Q_mn[n], m, n prime",
                              qm + qn, qm * qn, m=m, n=n))
    for p in primes:
        for e in range(1, 7):
            for kk in range(e + 1):
                out.append(_check("Q_p^e[p^k] = 1 (k < e) or e + 1 (k = e)",
                                  q_brute(p**e, p**kk).Q, e + 1 if kk == e else 1, p=p, e=e, k=kk))
        for kk in range(1, 3 * p + 1):
            out.append(_check("Q_pk[p] = 1 if p | k else 2",
                              q_brute(p * kk, p).Q, 1 if kk % p == 0 else 2, p=p, k=kk))
    return out


def mq_printed_report(a_max: int = 200) -> Dict[str, Any]:
    """Where the printed MQ_a[b] = a^(tau(a)/2) agrees with enumeration.

    That value is the product of all divisors of a, so it holds for b = a;
    other agreements are listed separately.
    """
    full, other, total = 0, [], 0
    for a in range(1, a_max + 1):
        target = _pow_half(a, tau(a))
        for b in divisors(a):
            total += 1
            if q_brute(a, b).MQ == target:
                if a == b:
                    full += 1
                else:
                    other.append((a, b))
    return {"a_max": a_max, "pairs": total, "b_equals_a_matches": full,
            "other_matches": len(other), "other_examples": [f"{a},{b}" for a, b in other[:10]],
            "mismatches": total - full - len(other)}


def _primes_below(n: int) -> List[int]:
    return [p for p in range(2, n) if is_prime(p)]


def run_suite(closed_max: int = 2000, tau_max: int = 5000, p_below: int = 50, s_max: int = 500,
              k_max: int = 8, t_max: int = 50, restricted_max: int = 2000, fermat_p_below: int = 100,
              fermat_d_max: int = 30, p2_max: int = 2000) -> Dict[str, Any]:
    """Every check at the given scale.

    The gate covers the enumeration-internal identities (the tau(n^2) sum,
    multiplicativity, the two-term count); closed forms and printed
    identities are compared and every disagreement becomes a finding.
    """
    sections: Dict[str, Dict[str, Any]] = {}

    def section(name: str, checks: Iterable[Dict[str, Any]], gated: bool) -> None:
        checks = list(checks)
        bad = [c for c in checks if not c["ok"]]
        sections[name] = {"checks": len(checks), "failures": len(bad), "gated": gated,
                          "findings": bad[:50]}

    section("tau(n^2) divisor sum", (
        _check("sum Q_n[x], x|n = tau(n^2)", sum_q_over_divisors(n), tau(n * n), n=n)
        for n in range(1, tau_max + 1)), True)
    section("multiplicativity", (
        c for c in corollary_checks(min(closed_max, 400))
        if c["identity"].startswith("Q_mn[mn] = Q_mn[m] Q_mn[n]")), True)
    def two_term():
        for n in range(1, p2_max + 1):
            formula = -(-tau(n * n) // 2)
            yield _check("direct count = ceil(tau(n^2)/2)", count_two_brute(n), formula, n=n)
            yield _check("|solve_two(1/n)| = count_two(n)", len(solve_two(Fraction(1, n))),
                         count_two(n), n=n)
    section("two-term count", two_term(), True)

    def closed_vs_brute(split):
        for a in range(1, closed_max + 1):
            for b in divisors(a):
                c, r = q_closed(a, b, split), q_brute(a, b)
                yield _check("q_closed = q_brute", (c.Q, c.SQ, c.MQ), (r.Q, r.SQ, r.MQ), a=a, b=b)

    section("closed form, full-exponent split", closed_vs_brute(full_split), False)
    section("closed form, literal split", closed_vs_brute(literal_split), False)
    section("corollaries", (
        c for c in corollary_checks(min(closed_max, 400))
        if not c["identity"].startswith("Q_mn[mn] = Q_mn[m] Q_mn[n]")), False)

    def series():
        for p in _primes_below(p_below):
            yield from _series_prefix(p, s_max)
            for k in range(k_max + 1):
                yield from _series_prime_power(p, k)
                for t in range(1, t_max + 1):
                    if t % p:
                        yield from _series_coprime(p, k, t)
            yield from _euler(p)
    section("series and products", series(), False)

    def restricted():
        for n in range(1, restricted_max + 1):
            for x in divisors(n):
                yield _check("restricted sum over multiples of x", restricted_sum_x(n, x),
                             restricted_sum_x_closed(n, x), n=n, x=x)
            for p, alpha in factorize(n).items():
                for d in range(1, alpha + 1):
                    yield _check("restricted sum over multiples of p^d", restricted_sum_p(n, p, d),
                                 restricted_sum_p_closed(n, p, d), n=n, p=p, d=d)
    section("restricted sums", restricted(), False)

    fer = [fermat_congruence(p, d) for p in _primes_below(fermat_p_below) if p > 2
           for d in range(1, fermat_d_max + 1)]
    sections["fermat congruence"] = {"checks": len(fer), "failures": sum(not f["ok"] for f in fer),
                                     "gated": False, "findings": [f for f in fer if not f["ok"]][:50]}
    sections["printed MQ"] = {**mq_printed_report(200), "gated": False}
    gate = all(v["failures"] == 0 for v in sections.values() if v.get("gated"))
    return {"gate": gate, "sections": sections}
