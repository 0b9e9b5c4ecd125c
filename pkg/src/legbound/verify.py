"""Lemma verification runs and pointwise inequality audits.

Exact lemma checks either pass or fail.  Inequality audits compare two sides
on a grid; for the Antonov-Holshevnikov inequality and its script-L form the
small degrees n = 1, 2 are audit-only (known to fail at n = 1), everything
else is a hard check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import expansion
from .fmt import fmt_float
from .poly import (
    durand_bound,
    durand_lhs,
    gegenbauer_eval,
    legendre_deriv_eval,
    legendre_diff_bound_check,
    legendre_eval,
    script_l_bound_gamma,
    script_l_bound_pointwise,
    script_l_eval,
)

LEMMAS = ("key", "s-def", "s-recursion", "s-closed", "gamma", "ll", "eqb", "eqb2", "gegenbauer")
AUDIT_ONLY_DEGREES = (1, 2)
AUDIT_GRID_POINTS = 2001
# eqb2 and Durand's bound are attained (odd n, x = 0); the recurrences lose
# O(n) ulps, so that much relative slack separates rounding from a violation.
SHARP_ULPS_PER_DEGREE = 16


def sharp_rtol(n):
    return SHARP_ULPS_PER_DEGREE * (n + 1) * float(np.finfo(float).eps)


@dataclass(frozen=True)
class ReportLine:
    lemma: str
    n: int
    r: int
    status: str  # pass | fail | violation
    residual: float
    hard: bool = True
    points: tuple = ()

    def to_line(self):
        return (
            f"lemma,{self.lemma},n,{self.n},r,{self.r},status,{self.status},"
            f"residual,{fmt_float(self.residual)}"
        )

    def to_dict(self):
        return {
            "lemma": self.lemma,
            "n": self.n,
            "r": self.r,
            "status": self.status,
            "residual": self.residual,
            "hard": self.hard,
            "violations": [list(p) for p in self.points],
        }


@dataclass
class VerifyReport:
    lines: list = field(default_factory=list)

    @property
    def hard_failures(self):
        return [ln for ln in self.lines if ln.status == "fail"]

    @property
    def ok(self):
        return not self.hard_failures

    def to_csv(self):
        return "".join(ln.to_line() + "\n" for ln in self.lines)

    def to_json(self):
        return json.dumps({"lines": [ln.to_dict() for ln in self.lines]}, indent=2) + "\n"

    def to_markdown(self):
        from .bounds import markdown_table

        body = [[ln.lemma, str(ln.n), str(ln.r), ln.status, fmt_float(ln.residual)] for ln in self.lines]
        return markdown_table(["lemma", "n", "r", "status", "residual"], body)


def _from_verification(v):
    return ReportLine(v.lemma, v.n, v.r, "pass" if v.passed else "fail", v.residual)


def audit_grid(n_points=AUDIT_GRID_POINTS):
    return np.linspace(-1.0, 1.0, n_points)


def _strict_audit(lemma, n, lhs, rhs, xs):
    """Strict lhs < rhs on the open interval; endpoints (both sides 0) are exempt."""
    interior = np.abs(xs) < 1.0
    bad = interior & ~(lhs < rhs)
    residual = float(np.max((lhs - rhs)[interior]))
    hard = n not in AUDIT_ONLY_DEGREES
    if bad.any():
        status = "fail" if hard else "violation"
    else:
        status = "pass"
    points = tuple((float(x), float(a), float(b)) for x, a, b in zip(xs[bad], lhs[bad], rhs[bad]))
    return ReportLine(lemma, n, 0, status, residual, hard, points)


def audit_ll(n, xs=None):
    xs = audit_grid() if xs is None else xs
    lhs, rhs = legendre_diff_bound_check(n, xs)
    return _strict_audit("ll", n, lhs, rhs, xs)


def audit_eqb(n, xs=None):
    xs = audit_grid() if xs is None else xs
    lhs = np.abs(script_l_eval(n, xs))
    rhs = script_l_bound_pointwise(n, xs)
    return _strict_audit("eqb", n, lhs, rhs, xs)


def _sharp_audit(lemma, n, lhs, bound, xs):
    excess = lhs - bound
    bad = excess > sharp_rtol(n) * bound
    points = tuple((float(x), float(a), float(bound)) for x, a in zip(xs[bad], lhs[bad]))
    return ReportLine(lemma, n, 0, "fail" if bad.any() else "pass", float(np.max(excess)), True, points)


def audit_eqb2(n, xs=None):
    xs = audit_grid() if xs is None else xs
    return _sharp_audit("eqb2", n, np.abs(script_l_eval(n, xs)), script_l_bound_gamma(n), xs)


def audit_durand(n, xs=None, lam=1.5):
    xs = audit_grid() if xs is None else xs
    return _sharp_audit("durand", n, durand_lhs(n, lam, xs), durand_bound(n, lam), xs)


def check_gegenbauer_links(n, xs=None, rtol=1e-12):
    """C_n^(1/2) = L_n and C_{n-1}^(3/2) = L_n' on the grid."""
    xs = audit_grid() if xs is None else xs
    d1 = np.max(np.abs(gegenbauer_eval(n, 0.5, xs) - legendre_eval(n, xs)))
    worst = float(d1)
    if n >= 1:
        ref = legendre_deriv_eval(n, xs)
        d2 = np.max(np.abs(gegenbauer_eval(n - 1, 1.5, xs) - ref)) / max(1.0, np.max(np.abs(ref)))
        worst = max(worst, float(d2))
    return ReportLine("gegenbauer", n, 0, "pass" if worst <= rtol else "fail", worst)


def _s_closed_line(n, r):
    closed = expansion.s_value_closed(n, r).value
    ok = closed == expansion.s_value_definition(n, r).value
    if r >= 1:
        rec = (expansion.s_value_closed(n - 1, r - 1).value + expansion.s_value_closed(n + 1, r - 1).value) / (
            2 * n + 1
        )
        ok = ok and closed == rec
    return ReportLine("s-closed", n, r, "pass" if ok else "fail", 0.0 if ok else 1.0)


def _s_def_line(n, r):
    d = expansion.s_value_definition(n, r).value
    ok = d == expansion.s_value_closed(n, r).value
    if 1 <= r <= expansion.MAX_DEPTH:
        ok = ok and d == expansion.telescoped_sum(n, r)
    return ReportLine("s-def", n, r, "pass" if ok else "fail", 0.0 if ok else 1.0)


def run(lemma, n_values, r_max=None):
    """Run one verifier over degrees ``n_values``; depths 0/1..min(n-1, r_max)."""
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    report = VerifyReport()
    for n in n_values:
        top = n - 1 if r_max is None else min(n - 1, r_max)
        if lemma == "key":
            for r in range(1, top + 1):
                report.lines.append(_from_verification(expansion.verify_expansion_identity(n, r)))
        elif lemma == "s-def":
            for r in range(0, top + 1):
                report.lines.append(_s_def_line(n, r))
        elif lemma == "s-recursion":
            for r in range(1, top + 1):
                report.lines.append(_from_verification(expansion.verify_s_recursion(n, r)))
        elif lemma == "s-closed":
            for r in range(0, top + 1):
                report.lines.append(_s_closed_line(n, r))
        elif lemma == "gamma":
            for r in range(0, top + 1):
                report.lines.append(_from_verification(expansion.verify_gamma_identity(n, r)))
        elif lemma == "ll":
            report.lines.append(audit_ll(n))
        elif lemma == "eqb":
            report.lines.append(audit_eqb(n))
        elif lemma == "eqb2":
            report.lines.append(audit_eqb2(n))
        elif lemma == "gegenbauer":
            report.lines.append(check_gegenbauer_links(n))
            report.lines.append(audit_durand(n))
    return report
