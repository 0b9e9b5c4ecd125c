"""Closed-form bounds on Legendre coefficients and truncation errors.

Coefficient bounds take an index ``n``; truncation bounds take the partial-sum
order ``N``.  Each :class:`BoundKind` carries its seminorm and its validity
region, and evaluating outside that region raises :class:`ValidityError`.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DerivativeUnavailableError, GammaPoleError, LegboundError, ValidityError
from .fmt import fmt_float
from .poly import A

LOG_PRODUCT_THRESHOLD = 20


def _prod(factors):
    factors = list(factors)
    if len(factors) > LOG_PRODUCT_THRESHOLD:
        return math.exp(math.fsum(math.log(f) for f in factors))
    return math.prod(factors)


def _check_seminorm(value):
    if not value >= 0:
        raise ValidityError(f"seminorm must be nonnegative, got {value!r}")


def coeff_bound_bon(n, u0):
    """|a_n| <= A U_0 / sqrt(n + 1/3)."""
    if n < 1:
        raise ValidityError("coefficient bound (Bon) needs n >= 1")
    _check_seminorm(u0)
    return A * u0 / math.sqrt(n + 1.0 / 3.0)


def coeff_bound_hco(n, r, ur):
    """A (n+1/2) U_r / (sqrt(n-r+1/3) prod_{j=1}^{r+1} (n-r+2j-3/2))."""
    if r < 0 or n < r:
        raise ValidityError(f"coefficient bound (HCo) needs n >= r >= 0, got n={n}, r={r}")
    _check_seminorm(ur)
    den = _prod(n - r + 2 * j - 1.5 for j in range(1, r + 2))
    return A * (n + 0.5) * ur / (math.sqrt(n - r + 1.0 / 3.0) * den)


def gamma_nr(n, r):
    """The U_r-free factor of :func:`coeff_bound_hco`."""
    return coeff_bound_hco(n, r, 1.0)


def coeff_bound_xiang(n, r, ur):
    """U_r (n+1/2) Gamma((n-r)/2) / (2^r sqrt(pi) (n+r+1) Gamma((n+r+1)/2))."""
    if r < 0:
        raise ValidityError("r must be nonnegative")
    if n == r:
        raise GammaPoleError("Gamma((n-r)/2) has a pole at n = r")
    if n < r + 1:
        raise ValidityError(f"coefficient bound (Xiang) needs n >= r+1, got n={n}, r={r}")
    _check_seminorm(ur)
    log_val = (
        math.lgamma((n - r) / 2)
        - math.lgamma((n + r + 1) / 2)
        - r * math.log(2.0)
        - 0.5 * math.log(math.pi)
        - math.log(n + r + 1)
    )
    return ur * (n + 0.5) * math.exp(log_val)


def coeff_bound_wang21(n, r, ur):
    """2 U_r prod_{j=1}^{r} 1/(n-j+1/2) / sqrt(2 pi (n-r))."""
    if r < 0 or n < r + 1:
        raise ValidityError(f"coefficient bound (Wang 2021) needs n >= r+1, got n={n}, r={r}")
    _check_seminorm(ur)
    den = _prod(n - j + 0.5 for j in range(1, r + 1))
    return 2.0 * ur / (den * math.sqrt(2.0 * math.pi * (n - r)))


def theta_nr(n, r):
    """The U_r-free factor of :func:`coeff_bound_wang21`."""
    return coeff_bound_wang21(n, r, 1.0)


def trunc_bound_thm2(N, r, ur):
    """Sup-norm truncation bound driven by U_r; separate r = 1, odd and even forms."""
    if r < 1 or N < r + 1:
        raise ValidityError(f"truncation bound (Thm 2) needs r >= 1 and N >= r+1, got N={N}, r={r}")
    _check_seminorm(ur)
    if r == 1:
        return 2.0 * A * ur / math.sqrt(N - 2.0 / 3.0)
    lead = N + 1.5 if r % 2 else N + 0.5
    den = _prod(N - r + 2 * j - 1.5 for j in range(1, r + 1))
    return A * lead * ur / (den * (r - 0.5) * math.sqrt(N - r + 1.0 / 3.0))


def trunc_bound_wang21(N, r, ur):
    if r < 1 or N < r + 1:
        raise ValidityError(f"truncation bound (Wang 2021) needs r >= 1 and N >= r+1, got N={N}, r={r}")
    _check_seminorm(ur)
    if r == 1:
        return 4.0 * ur / math.sqrt(2.0 * math.pi * (N - 1))
    den = _prod(N - j + 1.5 for j in range(2, r + 1))
    return 2.0 * ur / (den * (r - 1) * math.sqrt(2.0 * math.pi * (N - r + 1)))


def trunc_bound_wang18(N, r, vhat):
    if r < 1:
        raise ValidityError("truncation bound (Wang 2018) needs r >= 1")
    if r == 1:
        if N < 3:
            raise ValidityError("truncation bound (Wang 2018) with r = 1 needs N >= 3")
        _check_seminorm(vhat)
        return 4.0 * vhat / math.sqrt(math.pi * (2 * N - 5))
    if N < r + 1:
        raise ValidityError(f"truncation bound (Wang 2018) needs N >= r+1, got N={N}, r={r}")
    _check_seminorm(vhat)
    den = _prod(N - j + 0.5 for j in range(2, r + 1))
    return 2.0 * vhat / (den * (r - 1) * math.sqrt(math.pi * (2 * N - 2 * r - 1)))


def trunc_bound_shu12(N, r, vr):
    if r < 2:
        raise ValidityError("truncation bound (Shu 2012) needs r >= 2 (r = 1 is degenerate)")
    if N <= r:
        raise ValidityError(f"truncation bound (Shu 2012) needs N > r, got N={N}, r={r}")
    _check_seminorm(vr)
    den = _prod(2 * N - 2 * j + 3 for j in range(2, r + 1))
    return math.sqrt(math.pi / 2.0) * vr / ((r - 1) * math.sqrt(N - r) * den)


# ---------------------------------------------------------------------------
# kinds


def _valid_bon(n, r):
    return (r == 0 and n >= 1, "needs r = 0 and n >= 1")


def _valid_hco(n, r):
    # The formula evaluates for n >= r, but at n = r it is false: f(x) = x has
    # a_1 = 1 while U_1 = 0.  The derivation only covers r <= n-1.
    return (r >= 0 and n >= r + 1, "needs n >= r+1")


def _valid_coeff_strict(n, r):
    return (r >= 0 and n >= r + 1, "needs n >= r+1")


def _valid_trunc(N, r):
    return (r >= 1 and N >= r + 1, "needs r >= 1 and N >= r+1")


def _valid_wang18(N, r):
    if r == 1:
        return (N >= 3, "needs N >= 3 for r = 1")
    return (r >= 2 and N >= r + 1, "needs r >= 1 and N >= r+1")


def _valid_shu12(N, r):
    return (r >= 2 and N > r, "needs N > r >= 2")


class BoundKind(enum.Enum):
    CoeffBon = ("coefficient", "U", coeff_bound_bon, _valid_bon)
    CoeffHCo = ("coefficient", "U", coeff_bound_hco, _valid_hco)
    CoeffXiang = ("coefficient", "U", coeff_bound_xiang, _valid_coeff_strict)
    CoeffWang21 = ("coefficient", "U", coeff_bound_wang21, _valid_coeff_strict)
    TruncThm2 = ("truncation", "U", trunc_bound_thm2, _valid_trunc)
    TruncWang21 = ("truncation", "U", trunc_bound_wang21, _valid_trunc)
    TruncWang18 = ("truncation", "Vhat", trunc_bound_wang18, _valid_wang18)
    TruncShu12 = ("truncation", "V", trunc_bound_shu12, _valid_shu12)

    def __init__(self, level, seminorm, func, validity):
        self.level = level
        self.seminorm = seminorm
        self._func = func
        self._validity = validity

    def valid(self, n_or_N, r):
        """``(ok, reason)`` for the validity region."""
        return self._validity(n_or_N, r)

    def evaluate(self, n_or_N, r, seminorm_value):
        ok, why = self.valid(n_or_N, r)
        if not ok:
            raise ValidityError(f"{self.name} {why}; got ({n_or_N}, {r})")
        if self is BoundKind.CoeffBon:
            return coeff_bound_bon(n_or_N, seminorm_value)
        return self._func(n_or_N, r, seminorm_value)

    @classmethod
    def from_name(cls, name):
        key = name.lower().replace("_", "").replace("-", "")
        for kind in cls:
            if kind.name.lower() == key or kind.name.lower().endswith(key):
                return kind
        raise KeyError(name)


COEFFICIENT_KINDS = [k for k in BoundKind if k.level == "coefficient"]
TRUNCATION_KINDS = [k for k in BoundKind if k.level == "truncation"]


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundRow:
    kind: str
    n_or_N: int
    r: int
    seminorm: Optional[float]
    bound: Optional[float]
    measured: Optional[float]
    flag: str

    def to_dict(self):
        return {
            "kind": self.kind,
            "n_or_N": self.n_or_N,
            "r": self.r,
            "seminorm": self.seminorm,
            "bound": self.bound,
            "measured": self.measured,
            "flag": self.flag,
        }


CSV_HEADER = "kind,n_or_N,r,seminorm,bound,measured,flag"


@dataclass
class BoundReport:
    rows: list
    function: str = ""
    constant_A: float = A
    notes: list = field(default_factory=list)

    @property
    def applicable(self):
        return [row for row in self.rows if not row.flag.startswith("inapplicable")]

    @property
    def violations(self):
        return [row for row in self.rows if row.flag == "violated"]

    def to_csv(self):
        lines = [CSV_HEADER]
        for row in self.rows:
            flag = row.flag.replace(",", ";")
            lines.append(
                f"{row.kind},{row.n_or_N},{row.r},{fmt_float(row.seminorm)},"
                f"{fmt_float(row.bound)},{fmt_float(row.measured)},{flag}"
            )
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "function": self.function,
            "A": self.constant_A,
            "rows": [row.to_dict() for row in self.rows],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_markdown(self):
        header = ["kind", "n or N", "r", "seminorm", "bound", "measured", "flag"]
        body = [
            [
                row.kind,
                str(row.n_or_N),
                str(row.r),
                fmt_float(row.seminorm),
                fmt_float(row.bound),
                fmt_float(row.measured),
                row.flag,
            ]
            for row in self.rows
        ]
        return markdown_table(header, body)


def markdown_table(header, body):
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(header)]
    line = lambda cells: "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    sep = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
    return "\n".join([line(header), sep] + [line(r) for r in body]) + "\n"


def compare(f, N, r, tol=None, series=None):
    """Evaluate every bound kind for ``f`` at truncation order ``N`` and depth ``r``.

    Coefficient kinds are evaluated at the first dropped index n = N+1 and
    measured against |a_{N+1}|; CoeffBon always uses r = 0.  Truncation kinds
    are measured against the sup-norm error of the degree-N partial sum.
    Rows outside a kind's validity region, or whose seminorm is unavailable,
    are kept and flagged ``inapplicable``.
    """
    from .quadrature import DEFAULT_TOL, seminorm
    from .series import coefficient_resolution, legendre_series, measured_sup_error

    tol = DEFAULT_TOL if tol is None else tol
    n = N + 1
    if series is None or series.N < n:
        series = legendre_series(f, n, tol)
    sup = measured_sup_error(f, series.truncate(N))
    a_n = abs(series.coeffs[n])
    a_res = coefficient_resolution(f, n)

    semis = {}

    def get_seminorm(kind, rr):
        key = (kind, rr)
        if key not in semis:
            try:
                semis[key] = seminorm(f, kind, rr, tol).value
            except LegboundError as exc:
                semis[key] = exc
        return semis[key]

    rows = []
    for kind in BoundKind:
        rr = 0 if kind is BoundKind.CoeffBon else r
        idx = n if kind.level == "coefficient" else N
        ok, why = kind.valid(idx, rr)
        if not ok:
            rows.append(BoundRow(kind.name, idx, rr, None, None, None, f"inapplicable: {why}"))
            continue
        sv = get_seminorm(kind.seminorm, rr)
        if isinstance(sv, Exception):
            reason = "seminorm unavailable" if isinstance(sv, DerivativeUnavailableError) else str(sv)
            rows.append(BoundRow(kind.name, idx, rr, None, None, None, f"inapplicable: {reason}"))
            continue
        bound = kind.evaluate(idx, rr, sv)
        if kind.level == "coefficient":
            measured = a_n
            sound = measured <= bound + a_res
        else:
            measured = sup.value
            sound = sup.within(bound)
        rows.append(BoundRow(kind.name, idx, rr, sv, bound, measured, "ok" if sound else "violated"))
    return BoundReport(rows, getattr(f, "name", ""), A)


@dataclass
class SweepResult:
    checks: int
    violations: list  # (function, kind, n_or_N, r, measured, bound)
    inapplicable: int

    @property
    def ok(self):
        return not self.violations


def soundness_sweep(functions, N_max=30, r_max=6, tol=None):
    """Check every applicable bound at every valid index <= N_max and depth <= r_max.

    Coefficient kinds compare |a_n| with the bound at n; truncation kinds
    compare the measured sup error of the degree-N sum.
    """
    from .quadrature import DEFAULT_TOL, seminorm
    from .series import coefficient_resolution, legendre_series, measured_sup_error

    tol = DEFAULT_TOL if tol is None else tol
    checks, skipped, bad = 0, 0, []
    for f in functions:
        s = legendre_series(f, N_max, tol)
        sups = {N: measured_sup_error(f, s.truncate(N)) for N in range(N_max + 1)}
        res = {n: coefficient_resolution(f, n) for n in range(N_max + 1)}
        for r in range(r_max + 1):
            semis = {}
            for name in ("U", "V", "Vhat"):
                try:
                    semis[name] = seminorm(f, name, r, tol).value
                except DerivativeUnavailableError:
                    semis[name] = None
            for kind in BoundKind:
                if kind is BoundKind.CoeffBon and r:
                    continue
                for idx in range(N_max + 1):
                    if not kind.valid(idx, r)[0]:
                        continue
                    sv = semis[kind.seminorm]
                    if sv is None:
                        skipped += 1
                        continue
                    bound = kind.evaluate(idx, r, sv)
                    checks += 1
                    if kind.level == "coefficient":
                        measured = abs(s.coeffs[idx])
                        sound = measured <= bound + res[idx]
                    else:
                        measured = sups[idx].value
                        sound = sups[idx].within(bound)
                    if not sound:
                        bad.append((f.name, kind.name, idx, r, measured, bound))
    return SweepResult(checks, bad, skipped)
