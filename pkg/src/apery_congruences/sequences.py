"""Apéry numbers and the exact sums built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import ConsistencyError
from .polyreduce import p_poly


@dataclass(frozen=True)
class AperyTable:
    """Frozen prefix A_0..A_N generated by the three-term recurrence."""

    values: tuple[int, ...]

    @property
    def max_index(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def covers(self, n: int) -> bool:
        return n <= self.max_index


def apery_direct(n: int) -> int:
    """A_n from both double-binomial forms, which must agree."""
    if n < 0:
        raise ValueError("n must be non-negative")
    first = sum(math.comb(n, k) ** 2 * math.comb(n + k, k) ** 2 for k in range(n + 1))
    second = sum(math.comb(n + k, 2 * k) ** 2 * math.comb(2 * k, k) ** 2 for k in range(n + 1))
    if first != second:
        raise ConsistencyError(f"the two binomial forms of A_{n} disagree")
    return first


def apery_upto(n_max: int) -> AperyTable:
    """A_0..A_{n_max} via

    (n+1)^3 A_n - (2n+3)(17n^2+51n+39) A_{n+1} + (n+2)^3 A_{n+2} = 0,

    checking that every division by (n+2)^3 is exact.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    vals = [1, 5]
    for n in range(n_max - 1):
        num = (2 * n + 3) * (17 * n * n + 51 * n + 39) * vals[-1] - (n + 1) ** 3 * vals[-2]
        q, r = divmod(num, (n + 2) ** 3)
        if r:
            raise ConsistencyError(f"recurrence step to A_{n + 2} is not exact")
        vals.append(q)
    return AperyTable(tuple(vals[: n_max + 1]))


def _table(table: AperyTable | None, n: int) -> AperyTable:
    if table is not None and table.covers(n):
        return table
    return apery_upto(max(n, 1))


def weighted_sum_thm1(m: int, p: int, table: AperyTable | None = None) -> int:
    """sum_{k=0}^{p-1} (2k+1)^m (-1)^k A_k."""
    A = _table(table, p - 1)
    return sum((2 * k + 1) ** m * (-1) ** k * A[k] for k in range(p))


def pm_weighted_sum(m: int, n: int, table: AperyTable | None = None) -> int:
    """sum_{k=0}^{n} P_m(k) (-1)^k A_k, evaluated term by term."""
    A = _table(table, n)
    coeffs = [c.numerator for c in reversed(p_poly(m).coeffs)]  # P_m has integer coefficients
    total = 0
    for k in range(n + 1):
        v = 0
        for c in coeffs:
            v = v * k + c
        total += v * A[k] if k % 2 == 0 else -v * A[k]
    return total


def pm_weighted_sum_closed(m: int, n: int, table: AperyTable | None = None) -> int:
    """Telescoped value of ``pm_weighted_sum(m, n)`` from three boundary terms.

    Uses 0**0 == 1, so the m = 3, n = 1 case needs no special handling.
    """
    if m < 3 or n < 1:
        raise ValueError("need m >= 3 and n >= 1")
    A = _table(table, n)
    s = (-1) ** n
    e = m - 3
    return (
        -s * (n - 1) ** e * n**3 * A[n - 1]
        + s * n**e * (n + 1) ** 3 * A[n]
        + s * (34 * n**3 + 51 * n**2 + 27 * n + 5) * (n - 1) ** e * A[n]
    )


def t_sum(n: int, table: AperyTable | None = None) -> int:
    """T_n = sum_{k=1}^{n} (-1)^(n-k) (9k^2+10k+3) k^2 A_k."""
    if n < 1:
        raise ValueError("n must be positive")
    A = _table(table, n)
    return sum((-1) ** (n - k) * (9 * k * k + 10 * k + 3) * k * k * A[k] for k in range(1, n + 1))


def t_sum_closed(n: int, table: AperyTable | None = None) -> int:
    """T_n from the alternating (2k+1)A_k sum plus two boundary terms."""
    if n < 1:
        raise ValueError("n must be positive")
    A = _table(table, n)
    val = (
        Fraction((-1) ** n * weighted_sum_thm1(1, n, A), 3)
        + Fraction(n * n * (630 * n * n + 745 * n + 216) * A[n], 72)
        - Fraction(n**3 * (18 * n - 7) * A[n - 1], 72)
    )
    if val.denominator != 1:
        raise ConsistencyError(f"closed form for T_{n} is not an integer: {val}")
    return val.numerator


def double_sum_naive(n_top: int, shift: int) -> int:
    """sum_{m} C(2m,m) sum_{k<=m} C(m,k) C(m+k,k) C(n_top,m+k) C(n_top+shift+m+k,m+k), term by term."""
    total = 0
    for m in range(n_top + 1):
        inner = 0
        for k in range(m + 1):
            j = m + k
            if j > n_top:
                break
            inner += math.comb(m, k) * math.comb(j, k) * math.comb(n_top, j) * math.comb(n_top + shift + j, j)
        total += math.comb(2 * m, m) * inner
    return total


@lru_cache(maxsize=None)
def _diagonal_weight(j: int) -> int:
    # C(m,k) C(m+k,k) = C(m+k,2k) C(2k,k), so grouping by j = m+k leaves
    # w_j = sum_{2k<=j} C(2(j-k), j-k) C(j,2k) C(2k,k), independent of n.
    return sum(math.comb(2 * (j - k), j - k) * math.comb(j, 2 * k) * math.comb(2 * k, k) for k in range(j // 2 + 1))


def _double_sum(n_top: int, shift: int) -> int:
    total = 0
    c_top = 1  # C(n_top, j)
    c_shift = 1  # C(n_top + shift + j, j)
    for j in range(n_top + 1):
        total += c_top * c_shift * _diagonal_weight(j)
        c_top = c_top * (n_top - j) // (j + 1)
        c_shift = c_shift * (n_top + shift + j + 1) // (j + 1)
    return total


def s_double_sum(n: int) -> int:
    """S_n = sum_{m<n} C(2m,m) sum_{k<=m} C(m,k)C(m+k,k)C(n-1,m+k)C(n+m+k,m+k)."""
    if n < 1:
        raise ValueError("n must be positive")
    return _double_sum(n - 1, 1)


def b_double_sum(n: int) -> int:
    """B_n = sum_{m<=n} C(2m,m) sum_{k<=m} C(m,k)C(m+k,k)C(n,m+k)C(n+m+k,m+k)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _double_sum(n, 0)


def guo_zeng_rhs(n: int) -> int:
    """(-1)^(n-1) S_n; equals (1/n) sum_{k<n} (-1)^k (2k+1) A_k."""
    return (-1) ** (n - 1) * s_double_sum(n)


@dataclass(frozen=True)
class EtaSeries:
    """a_1..a_N of q * prod_{n>=1} (1-q^{2n})^4 (1-q^{4n})^4."""

    coefficients: tuple[int, ...]

    @property
    def truncation(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.truncation:
            raise IndexError(f"a_{n} outside 1..{self.truncation}")
        return self.coefficients[n - 1]


def eta_coefficients(n_max: int) -> EtaSeries:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    # The leading q shifts degrees by one, so the product is needed to degree n_max - 1.
    deg = n_max - 1
    s = [0] * (deg + 1)
    s[0] = 1
    for step in (2, 4):
        d = step
        while d <= deg:
            for _ in range(4):
                for i in range(deg, d - 1, -1):
                    s[i] -= s[i - d]
            d += step
    return EtaSeries(tuple(s))
