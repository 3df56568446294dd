from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from apery_congruences.exactnum import ConsistencyError
from apery_congruences import polyreduce
from apery_congruences.polyreduce import (
    RationalPolynomial as Poly,
    g_basis_coefficients,
    g_poly,
    p_poly,
    q_basis_coefficients,
    q_poly,
    reduce_odd_power,
)

F = Fraction
coeff_lists = st.lists(
    st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12)), max_size=7
)


def _only_threes(d):
    while d % 3 == 0:
        d //= 3
    return d == 1


def test_normalization_and_degree():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).degree == -1
    assert Poly([0, 0]).is_zero()


def test_arith_examples():
    z = Poly.linear(2, 1)
    assert z**3 == Poly([1, 6, 12, 8])
    assert z.compose_linear(F(1, 2), F(-1, 2)) == Poly([0, 1])
    assert p_poly(3).eval_int(1) == 126
    assert str(p_poly(4)) == "36*x^4 + 18*x^3 - 21*x^2 - 21*x - 5"
    assert (Poly([1, 1]) - Poly([1, 1])).is_zero()


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws(a, b, c):
    A, B, C = Poly(a), Poly(b), Poly(c)
    assert A + B == B + A
    assert A * B == B * A
    assert A * (B + C) == A * B + A * C
    assert (A - B) + B == A


@given(coeff_lists, coeff_lists)
def test_degree_of_product(a, b):
    A, B = Poly(a), Poly(b)
    if not A.is_zero() and not B.is_zero():
        assert (A * B).degree == A.degree + B.degree


@given(coeff_lists, coeff_lists, st.integers(-20, 20))
def test_evaluation_is_a_homomorphism(a, b, x):
    A, B = Poly(a), Poly(b)
    assert (A * B)(x) == A(x) * B(x)
    assert (A + B)(x) == A(x) + B(x)
    assert A.compose(B)(x) == A(B(x))


def test_p_poly_examples():
    assert p_poly(1) == Poly([1, 2])
    assert p_poly(3) == Poly([6, 30, 54, 36])
    assert p_poly(4) == Poly([-5, -21, -21, 18, 36])


@pytest.mark.parametrize("m", [0, 2, -1])
def test_p_poly_rejects(m):
    with pytest.raises(ValueError):
        p_poly(m)


def test_p_poly_degree_and_leading():
    for m in range(3, 42):
        P = p_poly(m)
        assert P.degree == m and P.leading == 36
        assert P.is_integral()
        assert P.coeff(m - 1) % 2 == 0


def test_p_poly_matches_definition_pointwise():
    for m in range(3, 15):
        for x in range(-6, 7):
            direct = (x + 1) ** 3 * x ** (m - 3) + (34 * x**3 + 51 * x**2 + 27 * x + 5) * (x - 1) ** (m - 3) + x**3 * (x - 2) ** (m - 3)
            assert p_poly(m).eval_int(x) == direct


def test_q_poly_examples():
    assert q_poly(3) == Poly([12, 30, 27, 9])
    assert q_poly(3).coeff(0) % 2 == 0
    assert q_poly(4).leading == 9


def test_q_poly_structure():
    for k in range(3, 42):
        Q = q_poly(k)
        assert Q.is_integral() and Q.degree == k and Q.leading == 9
        assert Q.coeff(0) % 2 == 0


def test_g_poly_examples():
    z = Poly([0, 1])
    expected = ((z + 1) ** 3).scale(F(1, 8)) + Poly([0, F(3, 4), 0, F(17, 4)]) + ((z - 1) ** 3).scale(F(1, 8))
    assert g_poly(3) == expected
    assert all(g_poly(3).coeff(i) == 0 for i in (0, 2))
    assert g_poly(4).reflect() == g_poly(4)
    assert g_poly(5).coeff(4) == 0


def test_g_poly_parity():
    for k in range(3, 26):
        assert (g_poly(k).reflect() - g_poly(k).scale((-1) ** k)).is_zero()
        assert g_poly(k).degree == k


def test_g_is_p_under_substitution():
    # P_k((z-1)/2) spelled through G_k: (z+1)^3/8 ((z-1)/2)^(k-3) + ... ; check k=3 directly.
    assert p_poly(3).compose_linear(F(1, 2), F(-1, 2)) == g_poly(3)


def test_reduction_examples():
    assert reduce_odd_power(1).c_m == 1 and reduce_odd_power(1).a == {}
    r3 = reduce_odd_power(3)
    assert r3.a == {3: F(2, 9)} and r3.c_m == F(-1, 3)
    assert reduce_odd_power(5).c_m == F(-13, 27)
    assert reduce_odd_power(7).c_m == F(5, 9)


@pytest.mark.parametrize("m", [0, 2, 4, -3])
def test_reduction_rejects_even_or_nonpositive(m):
    with pytest.raises(ValueError):
        reduce_odd_power(m)


def _c_m_by_linear_solve(m):
    # Independent route: solve (2x+1)^m = sum_{k=3}^m a_k P_k + c (2x+1) coefficientwise.
    x = sympy.symbols("x")
    unknowns = sympy.symbols(f"a3:{m + 1}") + (sympy.Symbol("c"),)

    def P(k):
        if k == 1:
            return 2 * x + 1
        return (x + 1) ** 3 * x ** (k - 3) + (34 * x**3 + 51 * x**2 + 27 * x + 5) * (x - 1) ** (k - 3) + x**3 * (x - 2) ** (k - 3)

    expr = (2 * x + 1) ** m - sum(a * P(k) for a, k in zip(unknowns[:-1], range(3, m + 1))) - unknowns[-1] * P(1)
    eqs = sympy.Poly(sympy.expand(expr), x).all_coeffs()
    sol = sympy.solve(eqs, unknowns, dict=True)
    assert len(sol) == 1
    return Fraction(str(sol[0][unknowns[-1]]))


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11, 13])
def test_c_m_matches_linear_algebra(m):
    assert reduce_odd_power(m).c_m == _c_m_by_linear_solve(m)


def test_reduction_certificates():
    target = Poly.linear(2, 1)
    for m in range(1, 42, 2):
        res = reduce_odd_power(m)
        assert res.reconstruct() == target**m
        assert set(res.a) == set(range(3, m + 1))
        assert _only_threes(res.c_m.denominator)
        assert res.c_m.numerator % 2 == 1
        assert all(_only_threes(a.denominator) for a in res.a.values())


def test_leading_q_coefficient_is_one_ninth():
    for m in range(3, 42, 2):
        b = q_basis_coefficients(reduce_odd_power(m))
        assert b[m] == F(1, 9)
        assert all(_only_threes(v.denominator) for v in b.values())


def test_q_basis_identity():
    y = Poly([1, 1])
    for m in range(3, 22, 2):
        res = reduce_odd_power(m)
        b = q_basis_coefficients(res)
        rebuilt = y.scale(res.c_m)
        for k, bk in b.items():
            rebuilt = rebuilt + q_poly(k).scale(bk)
        assert rebuilt == y**m


def test_g_basis_even_coefficients_vanish():
    for m in range(3, 26, 2):
        res = reduce_odd_power(m)
        c = g_basis_coefficients(res)
        assert all(c[k] == 0 for k in c if k % 2 == 0)
        lhs = Poly()
        for k, ak in res.a.items():
            lhs = lhs + p_poly(k).compose_linear(F(1, 2), F(-1, 2)).scale(ak)
        rhs = Poly()
        for k, ck in c.items():
            rhs = rhs + g_poly(k).scale(ck)
        assert lhs == rhs


def test_nine_k_squared_decomposition():
    combo = p_poly(4).scale(F(1, 4)) + p_poly(3).scale(F(11, 72)) + p_poly(1).scale(F(1, 3))
    assert combo == Poly([0, 0, 3, 10, 9])


def test_bad_remainder_is_internal_error(monkeypatch):
    real = polyreduce.p_poly

    def skewed(m):
        return real(m) + Poly([0, 0, 1]) if m == 3 else real(m)

    monkeypatch.setattr(polyreduce, "p_poly", skewed)
    polyreduce._reduce_cached.cache_clear()
    try:
        with pytest.raises(ConsistencyError):
            polyreduce.reduce_odd_power(3)
    finally:
        polyreduce._reduce_cached.cache_clear()
