"""Legendre approximation bounds: coefficients, truncation errors, identities."""

from .bounds import BoundKind, BoundReport, compare
from .errors import LegboundError
from .expansion import expand, s_value_closed, s_value_definition
from .funcdsl import FunctionSpec, builtin_fj, make_function_spec, parse
from .poly import A, legendre_eval
from .quadrature import gauss_legendre_rule, integrate, seminorm
from .series import LegendreSeries, legendre_series, measured_sup_error

__version__ = "0.1.0"

__all__ = [
    "A",
    "BoundKind",
    "BoundReport",
    "FunctionSpec",
    "LegboundError",
    "LegendreSeries",
    "builtin_fj",
    "compare",
    "expand",
    "gauss_legendre_rule",
    "integrate",
    "legendre_eval",
    "legendre_series",
    "make_function_spec",
    "measured_sup_error",
    "parse",
    "s_value_closed",
    "s_value_definition",
    "seminorm",
]
