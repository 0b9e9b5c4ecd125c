import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from legbound.funcdsl import builtin_fj, make_function_spec
from legbound.series import (
    LegendreSeries,
    coefficient,
    error_grid,
    legendre_series,
    measured_sup_error,
    quadrature_order,
    truncated_eval,
)


def test_quadrature_order():
    assert quadrature_order(0) == 64
    assert quadrature_order(100) == 132


def _exp_coeff(n):
    # a_n of e^x is (2n+1) sqrt(pi/2) I_{n+1/2}(1)
    return float((2 * n + 1) * mpmath.sqrt(mpmath.pi / 2) * mpmath.besseli(n + 0.5, 1))


def test_exp_coefficients(exp_spec):
    s = legendre_series(exp_spec, 12)
    assert s.coeffs[0] == pytest.approx(1.1752011936, rel=1e-10)
    for n in range(13):
        assert s.coeffs[n] == pytest.approx(_exp_coeff(n), rel=1e-12, abs=1e-14)


def test_polynomial_coefficients_exact():
    f = make_function_spec("x^6 - 2*x^3 + 0.5*x - 0.25")
    ref = np.polynomial.legendre.poly2leg([-0.25, 0.5, 0, -2, 0, 0, 1])
    s = legendre_series(f, 8)
    np.testing.assert_allclose(s.coeffs[:7], ref, atol=1e-14)
    assert abs(s.coeffs[7]) < 1e-14 and abs(s.coeffs[8]) < 1e-14


def test_kinked_coefficient():
    # |x| has a_2 = 5/8
    f = make_function_spec("abs(x)")
    assert coefficient(f, 2) == pytest.approx(5 / 8, rel=1e-13)
    assert abs(coefficient(f, 3)) < 1e-15


def test_negative_index():
    with pytest.raises(ValueError):
        coefficient(make_function_spec("x"), -1)


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=15), st.floats(-1, 1))
def test_clenshaw_matches_numpy(coeffs, x):
    s = LegendreSeries(tuple(coeffs))
    ref = np.polynomial.legendre.legval(x, coeffs)
    assert truncated_eval(s, x) == pytest.approx(ref, abs=1e-12 * (1 + sum(map(abs, coeffs))))


def test_truncate_and_serialize(exp_spec):
    s = legendre_series(exp_spec, 5)
    t = s.truncate(2)
    assert t.N == 2 and t.coeffs == s.coeffs[:3]
    assert s.to_csv().splitlines()[0] == "n,a_n"
    assert len(s.to_csv().splitlines()) == 7
    assert s.to_dict()["N"] == 5


def test_error_grid_contains_breakpoints():
    xs = error_grid((0.3,), 101)
    assert 0.3 in xs and -1.0 in xs and 1.0 in xs
    assert np.all(np.diff(xs) > 0)


def test_exp_sup_error(exp_spec):
    err = measured_sup_error(exp_spec, legendre_series(exp_spec, 10))
    # all a_n > 0 and L_n(1) = 1, so the error at x = 1 is the whole tail
    tail = math.fsum(_exp_coeff(n) for n in range(11, 30))
    assert err.value == pytest.approx(7.76e-11, rel=5e-3)
    assert err.argmax == 1.0
    assert abs(err.value - tail) <= err.resolution


def test_fj_sup_error_t0():
    f = builtin_fj(3, 0.0)
    err = measured_sup_error(f, legendre_series(f, 15))
    assert err.value == pytest.approx(5.86e-5, rel=1e-3)
    assert err.resolution < 1e-12
