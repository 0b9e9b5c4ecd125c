"""Legendre and Gegenbauer polynomials, the normalized form script-L, the
pointwise inequalities built on them, and exact rational polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CapExceededError, DegreeError, DomainError, UnsupportedOrderError

#: Constant of the Antonov-Holshevnikov inequality, kept as the literal decimal.
A = 0.825031

RATIONAL_DEGREE_CAP = 64


def _check_degree(n, minimum=0):
    if int(n) != n or n < minimum:
        raise DegreeError(f"degree must be an integer >= {minimum}, got {n!r}")


def _as_abscissa(x):
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0) or np.any(np.isnan(arr)):
        raise DomainError("abscissa must lie in [-1, 1]")
    return arr


def _out(arr, scalar):
    return float(arr) if scalar else arr


def legendre_eval(n, x):
    """L_n(x) by the three-term recurrence. ``x`` may be a scalar or array."""
    _check_degree(n)
    scalar = np.ndim(x) == 0
    x = _as_abscissa(x)
    p_prev = np.ones_like(x)
    if n == 0:
        return _out(p_prev, scalar)
    p = x.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return _out(p, scalar)


def legendre_deriv_eval(n, x):
    """L_n'(x) via L'_{k+1} = L'_{k-1} + (2k+1) L_k; finite at the endpoints."""
    _check_degree(n)
    scalar = np.ndim(x) == 0
    x = _as_abscissa(x)
    if n == 0:
        return _out(np.zeros_like(x), scalar)
    l_prev, l_cur = np.ones_like(x), x.copy()
    d_prev, d_cur = np.zeros_like(x), np.ones_like(x)
    for k in range(1, n):
        d_prev, d_cur = d_cur, d_prev + (2 * k + 1) * l_cur
        l_prev, l_cur = l_cur, ((2 * k + 1) * x * l_cur - k * l_prev) / (k + 1)
    return _out(d_cur, scalar)


def gegenbauer_eval(n, lam, x):
    """Gegenbauer (ultraspherical) polynomial C_n^(lam)(x), lam >= 1/2.

    Uses (k+1) C_{k+1} = 2(k+lam) x C_k - (k+2lam-1) C_{k-1}.
    """
    _check_degree(n)
    if not lam >= 0.5:
        raise UnsupportedOrderError(f"Gegenbauer order must be >= 1/2, got {lam!r}")
    scalar = np.ndim(x) == 0
    x = _as_abscissa(x)
    c_prev = np.ones_like(x)
    if n == 0:
        return _out(c_prev, scalar)
    c = 2.0 * lam * x
    for k in range(1, n):
        c_prev, c = c, (2.0 * (k + lam) * x * c - (k + 2.0 * lam - 1.0) * c_prev) / (k + 1)
    return _out(c, scalar)


def script_l_eval(n, x):
    """(1 - x^2) L_n'(x) / (n (n+1)), exactly zero at x = +-1."""
    _check_degree(n, minimum=1)
    scalar = np.ndim(x) == 0
    x = _as_abscissa(x)
    val = (1.0 - x * x) * legendre_deriv_eval(n, x) / (n * (n + 1))
    val = np.where(np.abs(x) == 1.0, 0.0, val)
    return _out(val, scalar)


def script_l_bound_pointwise(n, x):
    """A (1-x^2)^(1/4) / ((n+1/2) sqrt(n+1/3))."""
    _check_degree(n, minimum=1)
    scalar = np.ndim(x) == 0
    x = _as_abscissa(x)
    val = A * (1.0 - x * x) ** 0.25 / ((n + 0.5) * math.sqrt(n + 1.0 / 3.0))
    return _out(val, scalar)


def script_l_bound_gamma(n):
    """Sharp x-uniform bound Gamma(n/2) / (sqrt(pi) (n+1) Gamma((n+1)/2))."""
    _check_degree(n, minimum=1)
    return math.exp(math.lgamma(n / 2) - math.lgamma((n + 1) / 2)) / (math.sqrt(math.pi) * (n + 1))


def legendre_diff_bound_check(n, x):
    """Both sides of |L_{n-1} - L_{n+1}| < 2A (1-x^2)^(1/4) / sqrt(n+1/3).

    Returns ``(lhs, rhs)``; the caller decides how to judge them.
    """
    _check_degree(n, minimum=1)
    scalar = np.ndim(x) == 0
    x = _as_abscissa(x)
    lhs = np.abs(legendre_eval(n - 1, x) - legendre_eval(n + 1, x))
    rhs = 2.0 * A * (1.0 - x * x) ** 0.25 / math.sqrt(n + 1.0 / 3.0)
    return _out(lhs, scalar), _out(rhs, scalar)


def durand_bound(n, lam):
    """Gamma(n/2 + lam) / (Gamma(lam) Gamma(n/2 + 1)), valid for lam >= 1."""
    _check_degree(n)
    if not lam >= 1:
        raise UnsupportedOrderError("Durand's bound needs lam >= 1")
    return math.exp(math.lgamma(n / 2 + lam) - math.lgamma(lam) - math.lgamma(n / 2 + 1))


def durand_lhs(n, lam, x):
    """(1-x^2)^(lam-1/2) |C_n^(lam)(x)|."""
    scalar = np.ndim(x) == 0
    x = _as_abscissa(x)
    val = (1.0 - x * x) ** (lam - 0.5) * np.abs(gegenbauer_eval(n, lam, x))
    return _out(val, scalar)


# ---------------------------------------------------------------------------
# exact rational polynomials


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial with :class:`fractions.Fraction` coefficients, lowest power first.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in self.coeffs))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, RationalPoly):
            other = RationalPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly(tuple(a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        return RationalPoly(tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(tuple(out))

    __rmul__ = __mul__

    def deriv(self, k=1):
        coeffs = self.coeffs
        for _ in range(k):
            coeffs = tuple(i * c for i, c in enumerate(coeffs) if i > 0)
        return RationalPoly(coeffs)

    def __call__(self, x):
        """Horner evaluation; exact for Fraction/int input, float otherwise."""
        acc = 0 if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc


@lru_cache(maxsize=None)
def _rational_legendre(n):
    if n == 0:
        return RationalPoly((1,))
    if n == 1:
        return RationalPoly((0, 1))
    k = n - 1
    return (RationalPoly.x() * _rational_legendre(k)).scale(Fraction(2 * k + 1, k + 1)) - _rational_legendre(
        k - 1
    ).scale(Fraction(k, k + 1))


def rational_legendre(n, cap=RATIONAL_DEGREE_CAP):
    """Exact L_n as a :class:`RationalPoly`."""
    _check_degree(n)
    if n > cap:
        raise CapExceededError(f"rational Legendre degree {n} exceeds cap {cap}")
    return _rational_legendre(n)


_ONE_MINUS_X2 = RationalPoly((1, 0, -1))


def rational_script_l(n, cap=RATIONAL_DEGREE_CAP):
    """Exact (1-x^2) L_n' / (n(n+1)) as a :class:`RationalPoly`."""
    _check_degree(n, minimum=1)
    return (_ONE_MINUS_X2 * rational_legendre(n, cap).deriv()).scale(Fraction(1, n * (n + 1)))
