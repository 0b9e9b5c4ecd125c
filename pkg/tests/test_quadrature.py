import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from legbound.errors import DerivativeUnavailableError, DomainError, IntegrationError
from legbound.funcdsl import builtin_fj, make_function_spec
from legbound.quadrature import (
    gauss_legendre_rule,
    integrate,
    seminorm,
    seminorm_u,
    seminorm_v,
    seminorm_vhat,
    sign_change_points,
)


@pytest.mark.parametrize("order", [1, 2, 5, 24, 64, 101])
def test_rule_matches_numpy(order):
    rule = gauss_legendre_rule(order)
    x_ref, w_ref = np.polynomial.legendre.leggauss(order)
    np.testing.assert_allclose(rule.nodes, x_ref, atol=1e-14)
    # numpy's own weights drift to ~5e-12 relative at high order
    np.testing.assert_allclose(rule.weights, w_ref, rtol=1e-11)


def test_rule_against_extended_precision():
    n = 101
    rule = gauss_legendre_rule(n)
    with mpmath.workdps(40):
        for i in range(0, n, 10):
            x = mpmath.findroot(lambda t: mpmath.legendre(n, t), rule.nodes[i])
            w = 2 / ((1 - x**2) * mpmath.diff(lambda t: mpmath.legendre(n, t), x) ** 2)
            assert abs(rule.nodes[i] - float(x)) <= 1e-15
            assert float(abs(rule.weights[i] / w - 1)) <= 1e-12


def test_rule_symmetric_and_readonly():
    rule = gauss_legendre_rule(7)
    np.testing.assert_array_equal(rule.nodes, -rule.nodes[::-1])
    np.testing.assert_array_equal(rule.weights, rule.weights[::-1])
    assert rule.nodes[3] == 0.0
    with pytest.raises(ValueError):
        rule.nodes[0] = 0.0


def test_rule_order_errors():
    with pytest.raises(DomainError):
        gauss_legendre_rule(0)
    with pytest.raises(DomainError):
        gauss_legendre_rule(2.5)


@pytest.mark.parametrize("q", [2, 5, 10, 20, 50])
def test_exact_for_degree_2q_minus_1(q):
    rule = gauss_legendre_rule(q)
    for k in range(2 * q):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        got = rule.apply(lambda x: x**k)
        assert abs(got - exact) <= 1e-13 * max(1.0, abs(exact))


def test_integrate_smooth():
    assert integrate(np.exp) == pytest.approx(math.e - 1 / math.e, rel=1e-13)
    assert integrate(np.cos, interval=(0.0, math.pi / 2)) == pytest.approx(1.0, rel=1e-13)


def test_integrate_kink_with_breakpoint():
    got, info = integrate(lambda x: np.abs(x - 0.3), breakpoints=(0.3,), full_output=True)
    assert got == pytest.approx(0.5 * 0.7**2 + 0.5 * 1.3**2, rel=1e-13)
    assert info["panels"] == 2


def test_integrate_kink_without_breakpoint_still_converges():
    got = integrate(lambda x: np.abs(x - 1 / 3), tol=1e-10)
    assert got == pytest.approx(0.5 * (2 / 3) ** 2 + 0.5 * (4 / 3) ** 2, rel=1e-9)


def test_integrate_tol_floor():
    with pytest.raises(DomainError):
        integrate(np.exp, tol=1e-16)


def test_integrate_divergence():
    with pytest.raises(IntegrationError) as info:
        integrate(lambda x: np.sign(x - 1 / 7) / np.sqrt(np.abs(x - 1 / 7)), order=2)
    assert info.value.worst_interval is not None


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=12))
def test_polynomials_integrate_exactly(coeffs):
    p = np.polynomial.Polynomial(coeffs)
    exact = p.integ()(1.0) - p.integ()(-1.0)
    assert integrate(p) == pytest.approx(exact, abs=1e-12 * (1 + sum(abs(c) for c in coeffs)))


def test_sign_change_points():
    roots = sign_change_points(lambda x: np.cos(3 * x), -1.0, 1.0)
    np.testing.assert_allclose(roots, [-math.pi / 6, math.pi / 6], atol=1e-12)


# seminorms


def test_u_exp(exp_spec):
    assert seminorm_u(exp_spec, 0).value == pytest.approx(2.3504023872876, rel=1e-12)
    assert seminorm_u(exp_spec, 3).value == pytest.approx(math.e - 1 / math.e, rel=1e-12)


def test_v_exp(exp_spec):
    # integral of e^x / sqrt(1 - x^2) = pi * I_0(1)
    assert seminorm_v(exp_spec, 0).value == pytest.approx(math.pi * 1.2660658777520082, rel=1e-11)


def test_vhat_x():
    f = make_function_spec("x")
    ref = math.sqrt(math.pi) * math.gamma(0.75) / math.gamma(1.25)
    assert seminorm_vhat(f, 0).value == pytest.approx(ref, rel=1e-10)
    assert ref == pytest.approx(2.39628047, rel=1e-8)


def test_u_with_sign_change():
    f = make_function_spec("sin(3*x)")
    # f' = 3 cos(3x) changes sign at +-pi/6
    exact = 4 - 2 * math.sin(3.0)
    assert seminorm_u(f, 0).value == pytest.approx(exact, rel=1e-11)


def test_overrides_and_unavailable():
    f = builtin_fj(3, 0.5)
    assert seminorm_u(f, 3).value == 2.0
    assert seminorm_u(f, 3).analytic_override
    assert seminorm_v(f, 3).value == pytest.approx(2 / math.sqrt(0.75))
    assert seminorm_vhat(f, 3).value == pytest.approx(2 / 0.75**0.25)
    with pytest.raises(DerivativeUnavailableError):
        seminorm_u(f, 4)


def test_fj_lower_seminorm_numeric():
    # f_3'' = |x - t|, so U_1 = integral |f_3''| = ((1-t)^2 + (1+t)^2)/2
    t = -0.3
    f = builtin_fj(3, t)
    assert seminorm(f, "U", 1).value == pytest.approx(((1 - t) ** 2 + (1 + t) ** 2) / 2, rel=1e-12)
