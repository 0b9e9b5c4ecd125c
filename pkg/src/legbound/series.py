"""Legendre coefficients, truncated sums and the measured sup-norm error."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .poly import legendre_eval
from .quadrature import DEFAULT_TOL, integrate

ERROR_GRID_POINTS = 10001


def quadrature_order(n):
    return max(64, n + 32)


def coefficient(f, n, tol=DEFAULT_TOL):
    """a_n = (n + 1/2) * integral of f L_n, split at f's breakpoints."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    integrand = lambda x: f(x) * legendre_eval(n, x)
    return (n + 0.5) * integrate(integrand, f.breakpoints, tol, order=quadrature_order(n))


@dataclass(frozen=True)
class LegendreSeries:
    coeffs: tuple
    source: object = None
    quadrature_order: int = 64

    @property
    def N(self):
        return len(self.coeffs) - 1

    def truncate(self, N):
        return LegendreSeries(self.coeffs[: N + 1], self.source, self.quadrature_order)

    def __call__(self, x):
        return truncated_eval(self, x)

    def to_csv(self):
        from .fmt import fmt_float

        lines = ["n,a_n"] + [f"{n},{fmt_float(a)}" for n, a in enumerate(self.coeffs)]
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {"coeffs": list(self.coeffs), "N": self.N, "quadrature_order": self.quadrature_order}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def legendre_series(f, N, tol=DEFAULT_TOL):
    """Coefficients a_0..a_N of ``f``."""
    coeffs = tuple(coefficient(f, n, tol) for n in range(N + 1))
    return LegendreSeries(coeffs, f, quadrature_order(N))


def truncated_eval(s, x):
    """sum a_n L_n(x) by Clenshaw's backward recurrence."""
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    a = s.coeffs
    for k in range(len(a) - 1, -1, -1):
        # L_{k+1} = alpha_k L_k + beta_{k+1} L_{k-1}; alpha_k = (2k+1)x/(k+1), beta_k = -k/(k+1)
        alpha = (2 * k + 1) * x / (k + 1)
        beta = -(k + 1) / (k + 2)
        b1, b2 = a[k] + alpha * b1 + beta * b2, b1
    return float(b1) if scalar else b1


def error_grid(breakpoints=(), n_points=ERROR_GRID_POINTS):
    """Chebyshev-distributed points plus breakpoints and +-1."""
    xs = np.cos(np.pi * np.arange(n_points) / (n_points - 1))
    return np.unique(np.concatenate([xs, np.asarray(breakpoints, dtype=float), [-1.0, 1.0]]))


@dataclass(frozen=True)
class SupError:
    value: float
    argmax: float
    resolution: float

    def within(self, bound):
        """True unless the measured value exceeds ``bound`` by more than its own
        rounding resolution.  No slack is applied to the bound."""
        return self.value <= bound + self.resolution


def measured_sup_error(f, s, n_points=ERROR_GRID_POINTS):
    """max |f - f_N| on :func:`error_grid`, with the location of the maximum.

    ``resolution`` is the rounding floor of the measurement itself: Clenshaw
    summation of N+1 terms loses O(N) ulps of sum |a_n| + max |f|.
    """
    xs = error_grid(f.breakpoints, n_points)
    fx = f(xs)
    err = np.abs(fx - truncated_eval(s, xs))
    i = int(np.argmax(err))
    eps = np.finfo(float).eps
    scale = float(np.max(np.abs(fx))) + math.fsum(abs(a) for a in s.coeffs)
    resolution = 4 * eps * (s.N + 16) * scale
    return SupError(float(err[i]), float(xs[i]), resolution)


def coefficient_resolution(f, n):
    """Rounding floor of a quadrature-computed a_n."""
    xs = error_grid(f.breakpoints, 513)
    return 64 * np.finfo(float).eps * (n + 0.5) * 2.0 * float(np.max(np.abs(f(xs))))
