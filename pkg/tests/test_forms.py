from fractions import Fraction

import pytest

from ramlab.arith import bernoulli, sigma
from ramlab.forms import (
    ak_polynomial,
    discriminant_series,
    eisenstein,
    function_tuple,
    g_series,
    theta_series,
    verify_system,
)
from ramlab.series import Order


def test_eisenstein_leading_coefficients():
    assert eisenstein(1, 4).coeffs == (1, -24, -72, -96, -168)
    assert eisenstein(2, 3).coeffs == (1, 240, 2160, 6720)
    assert eisenstein(3, 2).coeffs == (1, -504, -16632)


def test_eisenstein_divisor_oracle():
    for k in range(1, 6):
        s = eisenstein(k, 40)
        factor = -Fraction(4 * k) / bernoulli(2 * k)
        for n in range(1, 41):
            assert s.coefficient(n) == factor * sigma(2 * k - 1, n)


def test_g_series_examples():
    g01 = g_series(0, 1, 4)
    assert g01.coeffs == (0, 1, Fraction(3, 2), Fraction(4, 3), Fraction(7, 4))
    g23 = g_series(2, 3, 3)
    assert g23.coefficient(2) == Fraction(9, 2)
    for v in (1, 3, 5, 7):
        assert g_series(0, v, 2).coefficient(1) == 1


def test_g_series_validation():
    with pytest.raises(ValueError):
        g_series(3, 3, 10)
    with pytest.raises(ValueError):
        g_series(0, 2, 10)


def test_ak_small_cases():
    assert ak_polynomial(2, 20).coefficients == {(1, 0): Fraction(1)}
    assert ak_polynomial(3, 20).coefficients == {(0, 1): Fraction(1)}
    assert ak_polynomial(4, 20).coefficients == {(2, 0): Fraction(1)}
    assert ak_polynomial(5, 20).coefficients == {(1, 1): Fraction(1)}
    assert ak_polynomial(6, 20).coefficients == {
        (3, 0): Fraction(441, 691),
        (0, 2): Fraction(250, 691),
    }


def test_ak_monomial_constraint():
    for k in range(2, 13):
        for (a, b) in ak_polynomial(k, 20).coefficients:
            assert 2 * a + 3 * b == k


def test_ak_reproduces_eisenstein():
    e4 = eisenstein(2, 30)
    e6 = eisenstein(3, 30)
    for k in range(2, 13):
        combo = ak_polynomial(k, 30).evaluate(e4, e6)
        assert combo == eisenstein(k, 30)


def test_discriminant_and_theta():
    d = discriminant_series(6)
    assert d.coefficient(1) == 1728
    assert d.coefficient(2) == -41472
    assert d.order() == Order.finite(1)
    assert theta_series(6).order() == Order.finite(2)


def test_function_tuple_shape():
    for m, count in ((1, 5), (3, 8), (5, 13)):
        tup = function_tuple(m, 10)
        assert len(tup.series) == count
        assert all(s.precision == 10 for s in tup.series)
    with pytest.raises(ValueError):
        function_tuple(2, 10)
    with pytest.raises(ValueError):
        function_tuple(-1, 10)


def test_function_tuple_constant_terms_and_order():
    tup = function_tuple(3, 8)
    assert tup.names == ("z", "E2", "E4", "E6", "g[0,1]", "g[0,3]", "g[1,3]", "g[2,3]")
    assert tup.series[0].coefficient(0) == 0
    assert tup.series[0].coefficient(1) == 1
    for name, s in zip(tup.names, tup.series):
        assert s.coefficient(0) == (1 if name.startswith("E") else 0)


def test_delta_of_g_is_next_g():
    for v in (3, 5, 7):
        for u in range(v - 1):
            assert g_series(u, v, 50).delta() == g_series(u + 1, v, 50)


def test_verify_system_passes():
    for m in (1, 3):
        report = verify_system(m, 40)
        assert report.ok, [eq for eq in report.equations if not eq.ok]


def test_verify_system_errata_v3():
    report = verify_system(3, 40)
    literal = [eq for eq in report.errata if "g[2,3]" in eq.name]
    assert len(literal) == 1
    assert not literal[0].ok
    assert literal[0].first_mismatch == 1


def test_verify_system_closing_m1():
    # delta(g[0,1]) coefficient at z^n is sigma_1(n), equal to (1-E2)/24
    report = verify_system(1, 30)
    closing = [eq for eq in report.equations if "g[0,1]" in eq.name]
    assert closing and closing[0].ok
