import math
from fractions import Fraction

import pytest

from apery_congruences.exactnum import ConsistencyError
from apery_congruences import sequences
from apery_congruences.sequences import (
    apery_direct,
    apery_upto,
    b_double_sum,
    double_sum_naive,
    eta_coefficients,
    guo_zeng_rhs,
    pm_weighted_sum,
    pm_weighted_sum_closed,
    s_double_sum,
    t_sum,
    t_sum_closed,
    weighted_sum_thm1,
)


def test_apery_direct_examples():
    assert [apery_direct(n) for n in (0, 1, 3)] == [1, 5, 1445]


def test_apery_upto_examples():
    assert apery_upto(2).values == (1, 5, 73)
    assert apery_upto(4)[4] == 33001
    assert apery_upto(3)[3] == 1445
    assert apery_upto(0).values == (1,)
    assert apery_upto(5)[5] == 819005


def test_recurrence_matches_direct_sum(apery_table):
    for n in range(65):
        assert apery_table[n] == apery_direct(n)


def test_table_invariants(apery_table):
    A = apery_table
    assert A[0] == 1
    assert all(A[n + 1] > A[n] > 0 for n in range(A.max_index))
    for n in range(A.max_index - 1):
        assert (n + 1) ** 3 * A[n] - (3 + 2 * n) * (39 + 51 * n + 17 * n * n) * A[n + 1] + (n + 2) ** 3 * A[n + 2] == 0


def test_table_is_frozen(apery_table):
    with pytest.raises(AttributeError):
        apery_table.values = ()
    with pytest.raises(TypeError):
        apery_table.values[0] = 2


def test_inexact_recurrence_step_is_internal_error(monkeypatch):
    # A wrong seed breaks integrality of the very next division.
    real_divmod = divmod
    monkeypatch.setattr(sequences, "divmod", lambda a, b: (a // b, 1), raising=False)
    with pytest.raises(ConsistencyError):
        sequences.apery_upto(3)
    monkeypatch.setattr(sequences, "divmod", real_divmod, raising=False)


def test_weighted_sum_examples():
    assert weighted_sum_thm1(1, 1) == 1
    assert weighted_sum_thm1(1, 5) == 1 - 15 + 365 - 10115 + 297009 == 287245
    assert weighted_sum_thm1(3, 2) == -134


def test_pm_weighted_sum_examples():
    assert pm_weighted_sum(3, 0) == 6
    assert pm_weighted_sum(3, 1) == -624
    assert pm_weighted_sum(4, 0) == -5


def test_telescoped_closed_form_examples():
    assert pm_weighted_sum_closed(3, 1) == -624
    assert pm_weighted_sum_closed(4, 2) == pm_weighted_sum(4, 2)
    assert pm_weighted_sum_closed(5, 1) == pm_weighted_sum(5, 1) == -40


def test_telescoped_closed_form_grid(apery_table):
    for m in range(3, 13):
        for n in range(1, 41):
            assert pm_weighted_sum(m, n, apery_table) == pm_weighted_sum_closed(m, n, apery_table)


def test_t_sum_examples():
    assert [t_sum(n) for n in (1, 2, 3)] == [110, 17118, 1465452]
    assert 22 * 5 - 59 * 4 * 73 + 114 * 9 * 1445 == 1465452


def test_t_sum_closed_examples():
    assert t_sum_closed(1) == 110
    assert t_sum_closed(2) == 17118
    assert t_sum_closed(5) == t_sum(5)


def test_double_sums_small_values():
    assert s_double_sum(1) == 1
    assert [b_double_sum(n) for n in (1, 2, 3)] == [5, 73, 1445]
    assert s_double_sum(2) % 3 == 1
    assert s_double_sum(4) % 3 == 2


def test_double_sums_match_naive_evaluation():
    for n in range(1, 60):
        assert s_double_sum(n) == double_sum_naive(n - 1, 1)
        assert b_double_sum(n) == double_sum_naive(n, 0)
    assert b_double_sum(0) == double_sum_naive(0, 0) == 1


def test_guo_zeng_examples():
    assert guo_zeng_rhs(1) == 1
    assert 2 * guo_zeng_rhs(2) == weighted_sum_thm1(1, 2)
    assert 10 * guo_zeng_rhs(10) == weighted_sum_thm1(1, 10)


def _eta_oracle(n_max):
    # Naive truncated convolution of each factor (1 - q^d)^4 expanded by the binomial theorem.
    series = [0] * (n_max + 1)
    series[1] = 1
    factors = [2 * n for n in range(1, n_max // 2 + 1)] + [4 * n for n in range(1, n_max // 4 + 1)]
    for d in factors:
        factor = [0] * (n_max + 1)
        for j in range(5):
            if j * d <= n_max:
                factor[j * d] = math.comb(4, j) * (-1) ** j
        series = [sum(series[i] * factor[k - i] for i in range(k + 1)) for k in range(n_max + 1)]
    return series[1:]


def test_eta_examples():
    assert eta_coefficients(1)[1] == 1
    assert eta_coefficients(2)[2] == 0
    e = eta_coefficients(13)
    assert (apery_upto(6)[6] - e[13]) % 169 == 0


def test_eta_against_naive_expansion():
    assert list(eta_coefficients(60).coefficients) == _eta_oracle(60)


def test_eta_truncation_is_consistent():
    long, short = eta_coefficients(120), eta_coefficients(50)
    assert long.coefficients[:50] == short.coefficients


def test_eta_index_bounds():
    e = eta_coefficients(5)
    with pytest.raises(IndexError):
        e[0]
    with pytest.raises(IndexError):
        e[6]


def test_gessel_congruences(apery_table):
    for n in range(apery_table.max_index + 1):
        assert (apery_table[n] - (-1) ** n) % 3 == 0
        assert apery_table[n] % 8 == (5 if n % 2 else 1)


def test_lemma33_refinements(apery_table):
    A = apery_table
    for n in range(1, 501):
        if n % 3:
            assert (A[n] + A[n - 1] - (-1) ** n * 3 * n) % 9 == 0
        if n % 2:
            assert (A[n] - A[n - 1] - 4 * (-1) ** ((n - 1) // 2)) % 16 == 0


def test_t_positive(apery_table):
    assert all(t_sum(n, apery_table) > 0 for n in range(1, 301))


def test_t_two_step_difference_is_positive(apery_table):
    A = apery_table

    def weight(k):
        return (9 * k * k + 10 * k + 3) * k * k

    for n in range(2, 120):
        diff = t_sum(n + 1, A) - t_sum(n - 1, A)
        assert diff == weight(n + 1) * A[n + 1] - weight(n) * A[n]
        assert diff > 0


def test_b_double_sum_tracks_apery_numbers(apery_table):
    # Observed, not claimed by the source: B_n equals A_n.
    assert all(b_double_sum(n) == apery_table[n] for n in range(101))


def test_closed_t_rejects_bad_input():
    with pytest.raises(ValueError):
        t_sum_closed(0)
    with pytest.raises(ValueError):
        pm_weighted_sum_closed(2, 1)
