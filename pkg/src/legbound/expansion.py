"""The 2^r-term derivative expansion of script-L_n and the sums built on it.

Rewriting script-L_m = (script-L_{m+1} - script-L_{m-1})' / (2m+1) r times
expresses script-L_n as the r-th derivative of a signed combination of
script-L_{n-r}, ..., script-L_{n+r}.  The rewrite tree is the single source
of truth for the denominators lambda; they are never tabulated separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CapExceededError, DepthError, GammaPoleError, NonpositiveFactorError
from .poly import RationalPoly, rational_script_l

MAX_DEPTH = 12
MAX_EXACT_DEGREE = 24


@dataclass(frozen=True)
class ExpansionTerm:
    index: int
    coeff: Fraction

    @property
    def lam(self):
        """The denominator lambda = 1/|coeff| (an integer)."""
        inv = 1 / abs(self.coeff)
        assert inv.denominator == 1
        return inv.numerator

    @property
    def sign(self):
        return 1 if self.coeff > 0 else -1


@dataclass(frozen=True)
class Expansion:
    n: int
    r: int
    terms: tuple

    def __len__(self):
        return len(self.terms)

    @property
    def lambdas(self):
        return [t.lam for t in self.terms]


@dataclass(frozen=True)
class SValue:
    n: int
    r: int
    value: Fraction


@dataclass(frozen=True)
class Verification:
    """Outcome of one lemma check; ``residual`` is 0 for exact checks that pass."""

    lemma: str
    n: int
    r: int
    passed: bool
    residual: float = 0.0
    detail: str = ""


def _check_depth(n, r, *, allow_zero=False, max_r=None):
    lo = 0 if allow_zero else 1
    if r < lo or r > n - 1:
        raise DepthError(f"depth r={r} outside [{lo}, n-1={n - 1}] for n={n}")
    if max_r is not None and r > max_r:
        raise CapExceededError(f"depth r={r} exceeds cap {max_r}")


@lru_cache(maxsize=4096)
def _expand_terms(n, r):
    if r == 0:
        return ((n, Fraction(1)),)
    out = []
    for m, c in _expand_terms(n, r - 1):
        step = c / (2 * m + 1)
        out.append((m - 1, -step))
        out.append((m + 1, step))
    return tuple(out)


@lru_cache(maxsize=4096)
def _grouped_abs(n, r):
    """Map index m -> sum of |c_j| over tree terms with that index.

    Exact regrouping of the 2^r tree leaves; O(r^2) instead of O(2^r).
    """
    level = {n: Fraction(1)}
    for _ in range(r):
        nxt = {}
        for m, c in level.items():
            step = c / (2 * m + 1)
            nxt[m - 1] = nxt.get(m - 1, 0) + step
            nxt[m + 1] = nxt.get(m + 1, 0) + step
        level = nxt
    return tuple(sorted(level.items()))


def expand(n, r):
    """Expansion of script-L_n as an r-th derivative, in rewrite-tree order."""
    _check_depth(n, r, max_r=MAX_DEPTH)
    return Expansion(n, r, tuple(ExpansionTerm(m, c) for m, c in _expand_terms(n, r)))


def verify_expansion_identity(n, r):
    """Exact check that (sum_j c_j script-L_{m_j})^(r) == script-L_n."""
    _check_depth(n, r, max_r=MAX_DEPTH)
    if n > MAX_EXACT_DEGREE:
        raise CapExceededError(f"n={n} exceeds exact-path cap {MAX_EXACT_DEGREE}")
    combo = RationalPoly()
    for term in expand(n, r).terms:
        combo = combo + rational_script_l(term.index).scale(term.coeff)
    residual = combo.deriv(r) - rational_script_l(n)
    worst = max((abs(c) for c in residual.coeffs), default=Fraction(0))
    return Verification("key", n, r, residual.is_zero(), float(worst))


def s_value_definition(n, r):
    """S_n^r as the weighted sum of 2/(lambda_j (2 m_j + 1)) over the expansion."""
    if r == 0:
        if n < 0:
            raise DepthError("n must be nonnegative")
        return SValue(n, 0, Fraction(2, 2 * n + 1))
    _check_depth(n, r, max_r=None)
    total = sum((2 * c / (2 * m + 1) for m, c in _grouped_abs(n, r)), Fraction(0))
    return SValue(n, r, total)


def s_value_closed(n, r):
    """2^(r+1) / prod_{j=1}^{r+1} (2n - 2r + 4j - 3)."""
    if r < 0:
        raise DepthError("r must be nonnegative")
    first = 2 * n - 2 * r + 1
    if first <= 0:
        raise NonpositiveFactorError(f"factor 2n-2r+1 = {first} is not positive")
    denom = math.prod(2 * n - 2 * r + 4 * j - 3 for j in range(1, r + 2))
    return SValue(n, r, Fraction(2 ** (r + 1), denom))


def verify_s_recursion(n, r):
    """Exact check of S_n^r = (S_{n-1}^{r-1} + S_{n+1}^{r-1}) / (2n+1).

    Both right-hand terms exist whenever 1 <= r <= n-1.
    """
    _check_depth(n, r)
    lhs = s_value_definition(n, r).value
    rhs = (s_value_definition(n - 1, r - 1).value + s_value_definition(n + 1, r - 1).value) / (2 * n + 1)
    return Verification("s-recursion", n, r, lhs == rhs, float(abs(lhs - rhs)))


def _log_abs_fraction(q):
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def _log_gamma_ratio_term(m):
    # log of Gamma(m/2) / (sqrt(pi) (m+1) Gamma((m+1)/2))
    return math.lgamma(m / 2) - math.lgamma((m + 1) / 2) - 0.5 * math.log(math.pi) - math.log(m + 1)


def verify_gamma_identity(n, r, rtol=1e-11):
    """Check sum_j g(m_j)/lambda_j == Gamma((n-r)/2) / (2^r sqrt(pi) (n+r+1) Gamma((n+r+1)/2)).

    ``g`` is the sharp bound on |script-L_m|.  Terms are formed in log space
    and summed with :func:`math.fsum`.
    """
    if n - r <= 0:
        raise GammaPoleError(f"Gamma((n-r)/2) has a pole at n-r={n - r}")
    if n > 200:
        raise CapExceededError("n > 200")
    _check_depth(n, r, allow_zero=True)
    lhs = math.fsum(
        math.exp(_log_gamma_ratio_term(m) + _log_abs_fraction(c)) for m, c in _grouped_abs(n, r)
    )
    log_rhs = (
        math.lgamma((n - r) / 2)
        - r * math.log(2)
        - 0.5 * math.log(math.pi)
        - math.log(n + r + 1)
        - math.lgamma((n + r + 1) / 2)
    )
    rhs = math.exp(log_rhs)
    rel = abs(lhs - rhs) / rhs
    return Verification("gamma", n, r, rel <= rtol, rel)


def telescoped_sum(n, r):
    """sum_j |c_j| * 2/(2 m_j + 1), which equals S_n^r."""
    return sum((abs(t.coeff) * Fraction(2, 2 * t.index + 1) for t in expand(n, r).terms), Fraction(0))
