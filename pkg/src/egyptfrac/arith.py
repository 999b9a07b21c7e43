"""Exact integer arithmetic: gcd/lcm, primality, factorization, divisor functions.

All routines work on Python ints (arbitrary precision).  Rationals elsewhere
in the package are :class:`fractions.Fraction`, which normalizes eagerly.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from math import gcd as _gcd, isqrt
from typing import Dict, Iterable, List

Integer = int
Rational = Fraction
Factorization = Dict[int, int]

TRIAL_LIMIT = 10**6
RHO_SEED = 0x5EED

# deterministic Miller-Rabin bases, valid for every n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_EXACT_BELOW = 3317044064679887385961981
_MR_EXTRA_ROUNDS = 64       # 4^-64 = 2^-128 above the deterministic range
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class ArithmeticDomainError(ValueError):
    """Raised for inputs outside an operation's domain (e.g. gcd(0, 0))."""


def _as_int(x, name: str = "argument") -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"{name} must be an int, got {type(x).__name__}")
    return x


def gcd(a: int, b: int) -> int:
    _as_int(a, "a")
    _as_int(b, "b")
    if a == 0 and b == 0:
        raise ArithmeticDomainError("gcd(0, 0) is undefined")
    return _gcd(a, b)


def lcm(a: int, b: int) -> int:
    return lcm_many([a, b])


def lcm_many(values: Iterable[int]) -> int:
    """Least common multiple of a non-empty list of positive integers."""
    vals = list(values)
    if not vals:
        raise ArithmeticDomainError("lcm of an empty list")
    for v in vals:
        _as_int(v)
        if v < 1:
            raise ArithmeticDomainError(f"lcm requires positive integers, got {v}")
    return reduce(lambda x, y: x // _gcd(x, y) * y, vals)


def primality_mode(n: int) -> str:
    """"deterministic" when is_prime(n) is exact, "probabilistic" above 3.3e24."""
    return "deterministic" if n < _MR_EXACT_BELOW else "probabilistic"


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin: exact for n < 3.3e24 (fixed bases).

    Above that, 64 extra rounds with seeded random bases bound the error by
    2^-128; see primality_mode.
    """
    _as_int(n, "n")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, a, d, s) for a in _MR_BASES):
        return False
    if n < _MR_EXACT_BELOW:
        return True
    rng = random.Random(n ^ RHO_SEED)
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1), d, s)
               for _ in range(_MR_EXTRA_ROUNDS))


def _rho(n: int, rng: random.Random) -> int:
    # Brent's cycle detection; returns a nontrivial factor of composite odd n
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m, g, r, q = 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = _gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = _gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: Factorization, rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    f = _rho(n, rng)
    _split(f, out, rng)
    _split(n // f, out, rng)


def factorize(n: int) -> Factorization:
    """Prime factorization as {prime: exponent}, keys ascending.

    Trial division up to 1e6, then seeded Pollard rho on the cofactor, so
    results are reproducible run to run.
    """
    _as_int(n, "n")
    if n < 1:
        raise ArithmeticDomainError(f"factorize requires n >= 1, got {n}")
    out: Factorization = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p, step = 5, 2
    while p * p <= n and p <= TRIAL_LIMIT:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        p += step
        step = 6 - step
    if n > 1:
        if p * p > n:
            out[n] = out.get(n, 0) + 1
        else:
            _split(n, out, random.Random(RHO_SEED))
    return dict(sorted(out.items()))


def divisors_from(fac: Factorization) -> List[int]:
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    divs.sort()
    return divs


def divisors(n: int) -> List[int]:
    """Sorted list of positive divisors of n >= 1."""
    return divisors_from(factorize(n))


def tau(n: int) -> int:
    t = 1
    for e in factorize(n).values():
        t *= e + 1
    return t


def sigma(n: int) -> int:
    s = 1
    for p, e in factorize(n).items():
        s *= (p ** (e + 1) - 1) // (p - 1)
    return s


def phi(n: int) -> int:
    r = n
    for p in factorize(n):
        r = r // p * (p - 1)
    return r


def rad(n: int) -> int:
    r = 1
    for p in factorize(n):
        r *= p
    return r


def square_factorization(n: int) -> Factorization:
    """Factorization of n**2 without re-factoring."""
    return {p: 2 * e for p, e in factorize(n).items()}
