"""Exact integer/rational primitives and small number-theoretic helpers.

Integers are plain Python ``int`` and rationals are :class:`fractions.Fraction`;
both are arbitrary precision and always kept in lowest terms.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from numbers import Rational

INF = math.inf

RationalLike = int | Fraction


class NotPadicIntegerError(ValueError):
    """Raised when a rational has negative p-adic valuation where an integer is needed."""


class ConsistencyError(RuntimeError):
    """An exact identity that must hold by construction failed.

    This points at a transcription bug in a recurrence or closed form,
    never at a mathematical counterexample.
    """


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for n up to ~10**10."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    # Square the divisor to strip large powers quickly.
    while n % p == 0:
        pk, k = p, 1
        while n % (pk * pk) == 0:
            pk, k = pk * pk, 2 * k
        n //= pk
        v += k
    return v


def padic_valuation(x: RationalLike, p: int) -> int | float:
    """Return v_p(x) as an ``int``, or ``math.inf`` when ``x == 0``."""
    _require_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INF
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def residue_mod_prime_power(x: RationalLike, p: int, e: int) -> int:
    """Least non-negative r with den(x) * r == num(x) (mod p**e)."""
    _require_prime(p)
    if e < 1:
        raise ValueError("exponent must be positive")
    x = as_fraction(x)
    if x.denominator % p == 0:
        raise NotPadicIntegerError(f"{x} is not a {p}-adic integer")
    modulus = p**e
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def congruent_mod(x: RationalLike, y: RationalLike, p: int, e: int) -> bool:
    return padic_valuation(as_fraction(x) - as_fraction(y), p) >= e


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def legendre_p_over_3(p: int) -> int:
    """(p/3) for a prime p: 1, -1 or 0 according to p mod 3."""
    return legendre_symbol(p, 3)


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def _extend_bernoulli(n: int) -> None:
    # B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j, carried over a common
    # denominator per step so the inner loop stays in integers.
    out = _bernoulli_cache
    for m in range(len(out), n + 1):
        den = 1
        for b in out:
            den = den * b.denominator // math.gcd(den, b.denominator)
        c = 1  # C(m+1, j)
        acc = 0
        for j, b in enumerate(out):
            if b:
                acc += c * b.numerator * (den // b.denominator)
            c = c * (m + 1 - j) // (j + 1)
        out.append(Fraction(-acc, den * (m + 1)))


def bernoulli_upto(n: int) -> list[Fraction]:
    """Bernoulli numbers B_0..B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    with _bernoulli_lock:
        _extend_bernoulli(n)
        return _bernoulli_cache[: n + 1]


def bernoulli(n: int) -> Fraction:
    return bernoulli_upto(n)[n]


def harmonic_sums(p: int) -> tuple[Fraction, Fraction]:
    """(H_{p-1}, H^{(2)}_{p-1}) as exact rationals."""
    _require_prime(p)
    h1 = sum((Fraction(1, k) for k in range(1, p)), Fraction(0))
    h2 = sum((Fraction(1, k * k) for k in range(1, p)), Fraction(0))
    return h1, h2


def lucas_binom_mod3(n: int, k: int) -> int:
    """C(n, k) mod 3 as the product of base-3 digit binomials."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    r = 1
    while k:
        n, a = divmod(n, 3)
        k, b = divmod(k, 3)
        if b > a:
            return 0
        r = r * math.comb(a, b) % 3
    return r
