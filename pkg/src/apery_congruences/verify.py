"""Executable congruence checks and batch runs over prime/index ranges.

Every check returns a :class:`CongruenceReport`. A congruence modulo ``p**e``
passes when the p-adic valuation of ``lhs - rhs`` is at least ``e``; exact
identities use modulus 0 and pass only on equality.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactnum import (
    ConsistencyError,
    RationalLike,
    as_fraction,
    bernoulli_upto,
    is_prime,
    legendre_p_over_3,
    padic_valuation,
    primes_in_range,
    residue_mod_prime_power,
)
from .polyreduce import c_m as c_m_value
from .sequences import (
    AperyTable,
    EtaSeries,
    apery_upto,
    b_double_sum,
    eta_coefficients,
    guo_zeng_rhs,
    pm_weighted_sum,
    pm_weighted_sum_closed,
    s_double_sum,
    t_sum,
    t_sum_closed,
    weighted_sum_thm1,
)

log = logging.getLogger(__name__)

Params = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class CongruenceReport:
    check: str
    params: Params
    modulus: int
    lhs: int | None
    rhs: int | None
    diff_valuation: int | float
    passed: bool
    error: str | None = None
    internal: bool = False

    @property
    def sort_key(self) -> tuple:
        return (self.check, tuple(v for _, v in self.params))

    def param(self, name: str) -> int:
        return dict(self.params)[name]

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "params": {k: str(v) for k, v in self.params},
            "modulus": str(self.modulus),
            "lhs": "" if self.lhs is None else str(self.lhs),
            "rhs": "" if self.rhs is None else str(self.rhs),
            "diff_valuation": "inf" if self.diff_valuation == math.inf else int(self.diff_valuation),
            "pass": self.passed,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class BatchSummary:
    reports: list[CongruenceReport]
    wall_time: float = 0.0
    failures: list[CongruenceReport] = field(init=False)

    def __post_init__(self) -> None:
        self.failures = [r for r in self.reports if not r.passed]

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def internal_errors(self) -> list[CongruenceReport]:
        return [r for r in self.reports if r.internal]


def _params(**kw: int) -> Params:
    return tuple(kw.items())


def congruence_report(
    check: str, params: Params, lhs: RationalLike, rhs: RationalLike, p: int, e: int
) -> CongruenceReport:
    """Compare ``lhs`` and ``rhs`` modulo ``p**e`` (both must be p-integral)."""
    v = padic_valuation(as_fraction(lhs) - as_fraction(rhs), p)
    return CongruenceReport(
        check=check,
        params=params,
        modulus=p**e,
        lhs=residue_mod_prime_power(lhs, p, e),
        rhs=residue_mod_prime_power(rhs, p, e),
        diff_valuation=v,
        passed=v >= e,
    )


def identity_report(check: str, params: Params, lhs: int, rhs: int) -> CongruenceReport:
    ok = lhs == rhs
    return CongruenceReport(check, params, 0, lhs, rhs, math.inf if ok else 0, ok)


def _need(table: AperyTable | None, n: int) -> AperyTable:
    if table is not None and table.covers(n):
        return table
    return apery_upto(max(n, 1))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


# -- individual checks --------------------------------------------------------


def check_thm1(m: int, p: int, table: AperyTable | None = None) -> CongruenceReport:
    """sum_{k<p} (2k+1)^m (-1)^k A_k == c_m p (p/3) (mod p^3)."""
    _require(m >= 1 and m % 2 == 1, f"m must be odd and positive, got {m}")
    _require(p > 3 and is_prime(p), f"p must be a prime > 3, got {p}")
    lhs = weighted_sum_thm1(m, p, _need(table, p - 1))
    rhs = c_m_value(m) * p * legendre_p_over_3(p)
    return congruence_report("thm1", _params(m=m, p=p), lhs, rhs, p, 3)


def check_lemma21(m: int, p: int, table: AperyTable | None = None) -> CongruenceReport:
    """sum_{k<p} P_m(k) (-1)^k A_k == 0 (mod p^3)."""
    _require(m >= 3, f"m must be >= 3, got {m}")
    _require(p > 3 and is_prime(p), f"p must be a prime > 3, got {p}")
    lhs = pm_weighted_sum(m, p - 1, _need(table, p - 1))
    return congruence_report("lemma21", _params(m=m, p=p), lhs, 0, p, 3)


def _multiplicity(x: int, base: int) -> int | float:
    if x == 0:
        return math.inf
    v = 0
    while x % base == 0:
        x //= base
        v += 1
    return v


def check_thm2_integrality(n: int, table: AperyTable | None = None) -> CongruenceReport:
    """T_n > 0 and T_n / (n(n+1)) is odd, i.e. T_n == n(n+1) (mod 2n(n+1))."""
    _require(n >= 1, f"n must be positive, got {n}")
    t = t_sum(n, _need(table, n))
    base = n * (n + 1)
    modulus = 2 * base
    v = _multiplicity(t - base, modulus)
    return CongruenceReport(
        check="thm2-int",
        params=_params(n=n),
        modulus=modulus,
        lhs=t % modulus,
        rhs=base,
        diff_valuation=v,
        passed=t > 0 and v >= 1,
    )


def thm2_congruence_sum(p: int, table: AperyTable | None = None) -> int:
    """sum_{k=1}^{p} (-1)^k (9k^2+10k+3) k^2 A_k."""
    A = _need(table, p)
    return sum((-1) ** k * (9 * k * k + 10 * k + 3) * k * k * A[k] for k in range(1, p + 1))


def check_thm2_congruence(p: int, table: AperyTable | None = None) -> CongruenceReport:
    """sum_{k=1}^{p} (-1)^k (9k^2+10k+3) k^2 A_k == (p/3)(p|3) - 15p^2 (mod p^3)."""
    _require(p > 2 and is_prime(p), f"p must be an odd prime, got {p}")
    lhs = thm2_congruence_sum(p, table)
    rhs = Fraction(p, 3) * legendre_p_over_3(p) - 15 * p * p
    return congruence_report("thm2-cong", _params(p=p), lhs, rhs, p, 3)


def liu_wang_rhs(p: int) -> Fraction:
    """1 + p^3 (4/3 B_{p-3} - 1/2 B_{2p-4}) + p^4 B_{p-3} / 9."""
    b = bernoulli_upto(2 * p - 4)
    return 1 + p**3 * (Fraction(4, 3) * b[p - 3] - Fraction(1, 2) * b[2 * p - 4]) + Fraction(p**4, 9) * b[p - 3]


def check_liu_wang(p: int, table: AperyTable | None = None) -> CongruenceReport:
    """A_{p-1} modulo p^5 through Bernoulli numbers."""
    _require(p > 5 and is_prime(p), f"p must be a prime > 5, got {p}")
    lhs = _need(table, p - 1)[p - 1]
    return congruence_report("liu-wang", _params(p=p), lhs, liu_wang_rhs(p), p, 5)


def check_ap_minus2(p: int, table: AperyTable | None = None) -> CongruenceReport:
    _require(p > 3 and is_prime(p), f"p must be a prime > 3, got {p}")
    lhs = _need(table, p - 2)[p - 2]
    return congruence_report("ap-minus2", _params(p=p), lhs, 5 - 12 * p, p, 3)


def check_ap_mod_p(p: int, table: AperyTable | None = None) -> CongruenceReport:
    _require(p > 2 and is_prime(p), f"p must be an odd prime, got {p}")
    return congruence_report("ap-mod-p", _params(p=p), _need(table, p)[p], 5, p, 1)


def check_beukers(p: int, table: AperyTable | None = None, eta: EtaSeries | None = None) -> CongruenceReport:
    """A_{(p-1)/2} == a_p (mod p^2), with a_p read off the eta product."""
    _require(p > 2 and is_prime(p), f"p must be an odd prime, got {p}")
    if eta is None or eta.truncation < p:
        eta = eta_coefficients(p)
    lhs = _need(table, (p - 1) // 2)[(p - 1) // 2]
    return congruence_report("beukers", _params(p=p), lhs, eta[p], p, 2)


def h_value(n: int, table: AperyTable | None = None) -> Fraction:
    """h(n) = n^2/4 (A_n - A_{n-1}) + n^3/6 (A_n - A_{n-1}) + n^3 A_{n-1} + 2n A_n."""
    A = _need(table, n)
    d = A[n] - A[n - 1]
    return Fraction(n * n * d, 4) + Fraction(n**3 * d, 6) + n**3 * A[n - 1] + 2 * n * A[n]


def check_h_mod4(n: int, table: AperyTable | None = None) -> CongruenceReport:
    """h(n) == 0 (mod 4) for even n and == 2 (mod 4) for odd n."""
    _require(n >= 1, f"n must be positive, got {n}")
    return congruence_report("h-mod4", _params(n=n), h_value(n, table), 2 * (n % 2), 2, 2)


def check_gessel_mod3(n: int, table: AperyTable | None = None) -> CongruenceReport:
    return congruence_report("gessel-mod3", _params(n=n), _need(table, n)[n], (-1) ** n, 3, 1)


def check_gessel_mod8(n: int, table: AperyTable | None = None) -> CongruenceReport:
    return congruence_report("gessel-mod8", _params(n=n), _need(table, n)[n], 5 if n % 2 else 1, 2, 3)


def check_lemma33_mod9(n: int, table: AperyTable | None = None) -> CongruenceReport:
    """A_n + A_{n-1} == (-1)^n 3n (mod 9) when 3 does not divide n."""
    _require(n >= 1 and n % 3 != 0, f"n must be positive and prime to 3, got {n}")
    A = _need(table, n)
    return congruence_report("lemma33-mod9", _params(n=n), A[n] + A[n - 1], (-1) ** n * 3 * n, 3, 2)


def check_lemma33_mod16(n: int, table: AperyTable | None = None) -> CongruenceReport:
    """A_n - A_{n-1} == 4 (-1)^((n-1)/2) (mod 16) for odd n."""
    _require(n >= 1 and n % 2 == 1, f"n must be odd and positive, got {n}")
    A = _need(table, n)
    return congruence_report("lemma33-mod16", _params(n=n), A[n] - A[n - 1], 4 * (-1) ** ((n - 1) // 2), 2, 4)


def check_lemma32_s(n: int, table: AperyTable | None = None) -> CongruenceReport:
    _require(n >= 1, f"n must be positive, got {n}")
    return congruence_report("lemma32-s", _params(n=n), s_double_sum(n), (-1) ** (n - 1) * n, 3, 1)


def check_lemma32_b(n: int, table: AperyTable | None = None) -> CongruenceReport:
    _require(n >= 0, f"n must be non-negative, got {n}")
    return congruence_report("lemma32-b", _params(n=n), b_double_sum(n), (-1) ** n, 3, 1)


def check_guo_zeng(n: int, table: AperyTable | None = None) -> CongruenceReport:
    """sum_{k<n} (-1)^k (2k+1) A_k == n (-1)^(n-1) S_n exactly."""
    _require(n >= 1, f"n must be positive, got {n}")
    lhs = weighted_sum_thm1(1, n, _need(table, n))
    return identity_report("guo-zeng", _params(n=n), lhs, n * guo_zeng_rhs(n))


def check_telescope(m: int, n: int, table: AperyTable | None = None) -> CongruenceReport:
    """Term-by-term P_m-weighted sum against its telescoped closed form."""
    _require(m >= 3 and n >= 1, f"need m >= 3 and n >= 1, got m={m}, n={n}")
    A = _need(table, n)
    return identity_report("telescope", _params(m=m, n=n), pm_weighted_sum(m, n, A), pm_weighted_sum_closed(m, n, A))


def check_t_closed(n: int, table: AperyTable | None = None) -> CongruenceReport:
    _require(n >= 1, f"n must be positive, got {n}")
    A = _need(table, n)
    return identity_report("t-closed", _params(n=n), t_sum(n, A), t_sum_closed(n, A))


CHECKS: dict[str, Callable[..., CongruenceReport]] = {
    "thm1": check_thm1,
    "lemma21": check_lemma21,
    "thm2-int": check_thm2_integrality,
    "thm2-cong": check_thm2_congruence,
    "liu-wang": check_liu_wang,
    "ap-minus2": check_ap_minus2,
    "ap-mod-p": check_ap_mod_p,
    "beukers": check_beukers,
    "h-mod4": check_h_mod4,
    "gessel-mod3": check_gessel_mod3,
    "gessel-mod8": check_gessel_mod8,
    "lemma33-mod9": check_lemma33_mod9,
    "lemma33-mod16": check_lemma33_mod16,
    "lemma32-s": check_lemma32_s,
    "lemma32-b": check_lemma32_b,
    "guo-zeng": check_guo_zeng,
    "telescope": check_telescope,
    "t-closed": check_t_closed,
}


# -- suites -------------------------------------------------------------------


@dataclass(frozen=True)
class Ranges:
    """Parameter ranges for a batch; ``m=None`` lets each suite use its default m set."""

    primes: tuple[int, int] = (5, 300)
    n: tuple[int, int] = (1, 300)
    m: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        for name in ("primes", "n"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"empty {name} range {lo}..{hi}")

    def prime_list(self, lowest: int = 2) -> list[int]:
        lo, hi = self.primes
        return primes_in_range(max(lo, lowest), hi)

    def n_list(self, lowest: int = 0) -> list[int]:
        lo, hi = self.n
        return list(range(max(lo, lowest), hi + 1))

    def m_list(self, default: Iterable[int], keep: Callable[[int], bool]) -> list[int]:
        return [m for m in (self.m if self.m is not None else default) if keep(m)]


Task = tuple[str, Params]

ODD_M = tuple(range(1, 22, 2))


def _prime_tasks(check: str, lowest: int) -> Callable[[Ranges], list[Task]]:
    return lambda r: [(check, _params(p=p)) for p in r.prime_list(lowest)]


def _n_tasks(check: str, keep: Callable[[int], bool] = lambda n: n >= 1) -> Callable[[Ranges], list[Task]]:
    return lambda r: [(check, _params(n=n)) for n in r.n_list() if keep(n)]


def _thm1_tasks(r: Ranges) -> list[Task]:
    ms = r.m_list(ODD_M, lambda m: m >= 1 and m % 2 == 1)
    return [("thm1", _params(m=m, p=p)) for m in ms for p in r.prime_list(5)]


def _lemma21_tasks(r: Ranges) -> list[Task]:
    ms = r.m_list(range(3, 22), lambda m: m >= 3)
    return [("lemma21", _params(m=m, p=p)) for m in ms for p in r.prime_list(5)]


def _telescope_tasks(r: Ranges) -> list[Task]:
    ms = r.m_list(range(3, 13), lambda m: m >= 3)
    return [("telescope", _params(m=m, n=n)) for m in ms for n in r.n_list(1)]


def _both(*builders: Callable[[Ranges], list[Task]]) -> Callable[[Ranges], list[Task]]:
    return lambda r: [t for b in builders for t in b(r)]


SUITES: dict[str, Callable[[Ranges], list[Task]]] = {
    "thm1": _thm1_tasks,
    "lemma21": _lemma21_tasks,
    "thm2-int": _n_tasks("thm2-int"),
    "thm2-cong": _prime_tasks("thm2-cong", 3),
    "liu-wang": _prime_tasks("liu-wang", 7),
    "ap-minus2": _prime_tasks("ap-minus2", 5),
    "ap-mod-p": _prime_tasks("ap-mod-p", 3),
    "beukers": _prime_tasks("beukers", 3),
    "gessel": _both(_n_tasks("gessel-mod3", lambda n: n >= 0), _n_tasks("gessel-mod8", lambda n: n >= 0)),
    "lemma33": _both(
        _n_tasks("lemma33-mod9", lambda n: n >= 1 and n % 3 != 0),
        _n_tasks("lemma33-mod16", lambda n: n >= 1 and n % 2 == 1),
    ),
    "lemma32": _both(_n_tasks("lemma32-s"), _n_tasks("lemma32-b", lambda n: n >= 0)),
    "guo-zeng": _n_tasks("guo-zeng"),
    "h-mod4": _n_tasks("h-mod4"),
    "telescope": _telescope_tasks,
    "t-closed": _n_tasks("t-closed"),
}
SUITES["all"] = _both(*SUITES.values())


def suite_tasks(suite: str, ranges: Ranges) -> list[Task]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(sorted(SUITES))}")
    return SUITES[suite](ranges)


def _table_extent(tasks: Sequence[Task]) -> int:
    top = 1
    for _, params in tasks:
        for _, v in params:
            top = max(top, v)
    return top


def run_check(task: Task, table: AperyTable | None = None, eta: EtaSeries | None = None) -> CongruenceReport:
    """Run one task, turning any exception into a failed report."""
    name, params = task
    kwargs = dict(params)
    try:
        if name == "beukers":
            return check_beukers(table=table, eta=eta, **kwargs)
        return CHECKS[name](table=table, **kwargs)
    except ConsistencyError as exc:
        log.error("internal consistency failure in %s %s: %s", name, kwargs, exc)
        return CongruenceReport(name, params, 0, None, None, 0, False, error=str(exc), internal=True)
    except Exception as exc:
        return CongruenceReport(name, params, 0, None, None, 0, False, error=f"{type(exc).__name__}: {exc}")


_worker_tables: tuple[AperyTable, EtaSeries] | None = None


def _init_worker(extent: int) -> None:
    global _worker_tables
    _worker_tables = (apery_upto(extent), eta_coefficients(extent))


def _run_in_worker(task: Task) -> CongruenceReport:
    assert _worker_tables is not None
    return run_check(task, *_worker_tables)


def run_tasks(tasks: Sequence[Task], jobs: int = 1) -> BatchSummary:
    start = time.perf_counter()
    extent = _table_extent(tasks) + 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(extent,)) as pool:
            reports = list(pool.map(_run_in_worker, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        table, eta = apery_upto(extent), eta_coefficients(extent)
        reports = [run_check(t, table, eta) for t in tasks]
    reports.sort(key=lambda r: r.sort_key)
    return BatchSummary(reports, wall_time=time.perf_counter() - start)


def run_batch(suite: str, ranges: Ranges | None = None, jobs: int = 1) -> BatchSummary:
    """Run every check of ``suite`` over ``ranges``; never aborts on a failing check."""
    return run_tasks(suite_tasks(suite, ranges or Ranges()), jobs=jobs)
