"""Deterministic float formatting for emitted tables."""

import math

import numpy as np


def fmt_float(v):
    """Shortest round-trip decimal; scientific when |v| < 1e-3 or |v| >= 1e6."""
    if v is None:
        return ""
    v = float(v)
    if math.isnan(v) or math.isinf(v):
        return repr(v)
    if v == 0.0:
        return "0.0"
    if abs(v) < 1e-3 or abs(v) >= 1e6:
        return np.format_float_scientific(v, unique=True, trim="0", exp_digits=2)
    return np.format_float_positional(v, unique=True, trim="0")
