"""Dense rational polynomials and the P-basis reduction of odd powers of 2x+1.

``P_m`` is the family whose alternating Apéry-weighted sums telescope. Every
odd power ``(2x+1)**m`` is rewritten as ``sum a_k P_k + c_m (2x+1)`` by peeling
off leading terms, and the leftover coefficient ``c_m`` is the constant in the
mod p**3 congruence for ``sum (2k+1)**m (-1)**k A_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exactnum import ConsistencyError, RationalLike, as_fraction


class RationalPolynomial:
    """Immutable dense polynomial over Q; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: RationalLike) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def linear(cls, slope: RationalLike, intercept: RationalLike) -> "RationalPolynomial":
        """``slope * x + intercept``."""
        return cls([intercept, slope])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            body = str(mag) if (mag != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body + mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    @staticmethod
    def _coerce(other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial([other])

    def __add__(self, other) -> "RationalPolynomial":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "RationalPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalPolynomial":
        return self._coerce(other) - self

    def scale(self, c: RationalLike) -> "RationalPolynomial":
        c = as_fraction(c)
        return RationalPolynomial(c * a for a in self.coeffs)

    def __mul__(self, other) -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = RationalPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x: RationalLike) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_int(self, x: int) -> int:
        """Evaluate at an integer; the result must be an integer."""
        if self.is_integral():
            acc = 0
            for c in reversed(self.coeffs):
                acc = acc * x + c.numerator
            return acc
        val = self(x)
        if val.denominator != 1:
            raise ValueError(f"value {val} at x={x} is not an integer")
        return val.numerator

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def compose_linear(self, alpha: RationalLike, beta: RationalLike) -> "RationalPolynomial":
        """``P(alpha * x + beta)``."""
        return self.compose(RationalPolynomial.linear(alpha, beta))

    def reflect(self) -> "RationalPolynomial":
        """``P(-x)``."""
        return RationalPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


X = RationalPolynomial([0, 1])


@lru_cache(maxsize=None)
def p_poly(m: int) -> RationalPolynomial:
    """P_1 = 2x+1; for m >= 3 the three-term polynomial of degree m.

    P_m(x) = (x+1)^3 x^(m-3) + (34x^3+51x^2+27x+5)(x-1)^(m-3) + x^3 (x-2)^(m-3)
    """
    if m == 1:
        return RationalPolynomial.linear(2, 1)
    if m < 3:
        raise ValueError(f"P_m is defined for m = 1 and m >= 3, got {m}")
    mid = RationalPolynomial([5, 27, 51, 34])
    return (
        (X + 1) ** 3 * X ** (m - 3)
        + mid * (X - 1) ** (m - 3)
        + X**3 * (X - 2) ** (m - 3)
    )


def q_poly(k: int) -> RationalPolynomial:
    """Q_k(y) = 2^(k-2) P_k(y/2)."""
    if k < 3:
        raise ValueError("Q_k needs k >= 3")
    return p_poly(k).compose_linear(Fraction(1, 2), 0).scale(2 ** (k - 2))


def g_poly(k: int) -> RationalPolynomial:
    """G_k(z) = (z+1)^3/8 (z+2)^(k-3) + (17z^3/4 + 3z/4) z^(k-3) + (z-1)^3/8 (z-2)^(k-3)."""
    if k < 3:
        raise ValueError("G_k needs k >= 3")
    z = X
    mid = RationalPolynomial([0, Fraction(3, 4), 0, Fraction(17, 4)])
    return (
        ((z + 1) ** 3).scale(Fraction(1, 8)) * (z + 2) ** (k - 3)
        + mid * z ** (k - 3)
        + ((z - 1) ** 3).scale(Fraction(1, 8)) * (z - 2) ** (k - 3)
    )


@dataclass(frozen=True)
class ReductionResult:
    """``(2x+1)**m == sum(a[k] * P_k) + c_m * (2x+1)`` for odd m."""

    m: int
    a: Mapping[int, Fraction] = field(default_factory=dict)
    c_m: Fraction = Fraction(1)

    def reconstruct(self) -> RationalPolynomial:
        acc = p_poly(1).scale(self.c_m)
        for k, ak in self.a.items():
            if ak:
                acc = acc + p_poly(k).scale(ak)
        return acc

    def is_certified(self) -> bool:
        return self.reconstruct() == RationalPolynomial.linear(2, 1) ** self.m


def reduce_odd_power(m: int) -> ReductionResult:
    """Express ``(2x+1)**m`` in the basis P_m, ..., P_3, P_1.

    Eliminates the top coefficient degree by degree (every P_k, k >= 3, has
    degree k and leading coefficient 36), then checks that the quadratic
    remainder is a rational multiple of 2x+1.

    Raises:
        ValueError: ``m`` is not a positive odd integer.
        ConsistencyError: the remainder is not proportional to 2x+1.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError(f"m must be a positive odd integer, got {m}")
    return _reduce_cached(m)


@lru_cache(maxsize=None)
def _reduce_cached(m: int) -> ReductionResult:
    if m == 1:
        return ReductionResult(m=1, a={}, c_m=Fraction(1))
    r = RationalPolynomial.linear(2, 1) ** m
    a: dict[int, Fraction] = {}
    for k in range(m, 2, -1):
        ak = r.coeff(k) / 36 if r.degree == k else Fraction(0)
        a[k] = ak
        if ak:
            r = r - p_poly(k).scale(ak)
        if r.degree >= k:
            raise ConsistencyError(f"elimination left degree {r.degree} at k={k}")
    c = r.coeff(0)
    if r.coeff(2) != 0 or r.coeff(1) != 2 * c:
        raise ConsistencyError(f"remainder {r} of (2x+1)^{m} is not a multiple of 2x+1")
    result = ReductionResult(m=m, a=dict(sorted(a.items())), c_m=c)
    if not result.is_certified():
        raise ConsistencyError(f"reduction of (2x+1)^{m} does not reconstruct")
    return result


def c_m(m: int) -> Fraction:
    return reduce_odd_power(m).c_m


def q_basis_coefficients(result: ReductionResult) -> dict[int, Fraction]:
    """b_k = a_k / 2^(k-2), the coefficients against Q_k in the variable y = 2x."""
    return {k: ak / 2 ** (k - 2) for k, ak in result.a.items()}


def g_basis_coefficients(result: ReductionResult) -> dict[int, Fraction]:
    """Coefficients c_k of g(z) = sum_k a_k ((z-3)/2)^(k-3) = sum_k c_k z^(k-3).

    With these, ``sum a_k P_k((z-1)/2) == sum c_k G_k(z)``.
    """
    half_shift = RationalPolynomial.linear(Fraction(1, 2), Fraction(-3, 2))
    g = RationalPolynomial()
    for k, ak in result.a.items():
        if ak:
            g = g + (half_shift ** (k - 3)).scale(ak)
    return {k: g.coeff(k - 3) for k in result.a}
