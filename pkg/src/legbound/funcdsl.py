"""A small expression language for functions of x on [-1, 1].

Grammar::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := ("-")? power
    power  := atom ("^" integer)?
    atom   := number | "x" | ident "(" expr ")" | "(" expr ")"
    ident  := sin | cos | exp | log | sqrt | abs | sign

Expressions are differentiated symbolically.  ``abs`` differentiates to
``sign`` and ``sign`` to zero; any point mass that a classical derivative
drops is carried by explicit seminorm overrides on :class:`FunctionSpec`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from .errors import DomainError, NonIntegerExponentError, OverrideKeyError, ParseError

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "abs", "sign")

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Pow, Call]

X = Var()
ZERO = Num(0.0)
ONE = Num(1.0)

# ---------------------------------------------------------------------------
# tokenizer and parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    offset: int  # byte offset


def _tokenize(source):
    tokens = []
    pos = 0
    byte = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if not m:
            raise ParseError(f"unexpected character {source[pos]!r}", byte)
        text = m.group()
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, text, byte))
        pos = m.end()
        byte += len(text.encode("utf-8"))
    tokens.append(_Token("eof", "", byte))
    return tokens


class _Parser:
    def __init__(self, source):
        self.tokens = _tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def _fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"unexpected {found}", t.offset, expected)

    def _accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def _expect(self, text):
        if not self._accept(text):
            self._fail({text})

    def parse(self):
        e = self.expr()
        if self.tok.kind == "op" and self.tok.text == "^":
            # only a power can leave a '^' unconsumed
            raise ParseError(
                "chained '^'; parenthesize the base", self.tok.offset, {"+", "-", "*", "/", "end of input"}
            )
        if self.tok.kind != "eof":
            self._fail({"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self):
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            e = BinOp(op, e, self.term())
        return e

    def term(self):
        e = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            e = BinOp(op, e, self.factor())
        return e

    def factor(self):
        if self._accept("-"):
            return Neg(self.power())
        return self.power()

    def power(self):
        base = self.atom()
        if self._accept("^"):
            sign = -1 if self._accept("-") else 1
            t = self.tok
            if t.kind != "number":
                self._fail({"integer"})
            if not t.text.isdigit():
                raise NonIntegerExponentError(f"exponent {t.text!r} is not an integer", t.offset, {"integer"})
            self.i += 1
            return Pow(base, sign * int(t.text))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "number":
            self.i += 1
            return Num(float(t.text))
        if t.kind == "name":
            if t.text == "x":
                self.i += 1
                return X
            if t.text in FUNCTIONS:
                self.i += 1
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Call(t.text, arg)
            raise ParseError(f"unknown identifier {t.text!r}", t.offset, {"x", *FUNCTIONS})
        if self._accept("("):
            e = self.expr()
            self._expect(")")
            return e
        self._fail({"number", "x", "(", *FUNCTIONS})


def parse(source: str) -> Expr:
    """Parse ``source`` into an expression tree; raises :class:`ParseError`."""
    return _Parser(source).parse()


# ---------------------------------------------------------------------------
# printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _fmt_num(v):
    if v < 0 or math.copysign(1.0, v) < 0:
        return f"({v!r})"
    return repr(float(v))


def pretty(e: Expr) -> str:
    """Render ``e`` so that ``parse(pretty(e)) == e``."""
    return _pretty(e, 0)


def _pretty(e, ctx):
    # ctx: 0 expr, 1 right of +/-, 2 left of */, 3 right of */ or unary operand, 4 power base
    if isinstance(e, Num):
        s = _fmt_num(e.value)
        return s
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Call):
        return f"{e.name}({_pretty(e.arg, 0)})"
    if isinstance(e, Pow):
        s = f"{_pretty(e.base, 4)}^{e.exp}"
        return f"({s})" if ctx == 4 else s
    if isinstance(e, Neg):
        s = "-" + _pretty(e.arg, 4 if not isinstance(e.arg, Pow) else 3)
        return f"({s})" if ctx == 4 else s
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = _pretty(e.left, 0 if p == 1 else 2)
        right = _pretty(e.right, 1 if p == 1 else 3)
        s = f"{left} {e.op} {right}"
        needs = (p == 1 and ctx >= 1) or (p == 2 and ctx >= 3)
        return f"({s})" if needs else s
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# simplifying constructors and differentiation


def _is_num(e, v=None):
    return isinstance(e, Num) and (v is None or e.value == v)


def add(a, b):
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    if _is_num(a) and _is_num(b):
        return Num(a.value + b.value)
    return BinOp("+", a, b)


def sub(a, b):
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return neg(b)
    if _is_num(a) and _is_num(b):
        return Num(a.value - b.value)
    return BinOp("-", a, b)


def mul(a, b):
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return ZERO
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    if _is_num(a) and _is_num(b):
        return Num(a.value * b.value)
    return BinOp("*", a, b)


def div(a, b):
    if _is_num(a, 0.0):
        return ZERO
    if _is_num(b, 1.0):
        return a
    return BinOp("/", a, b)


def neg(a):
    if _is_num(a):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def power(base, k):
    if k == 0:
        return ONE
    if k == 1:
        return base
    return Pow(base, k)


def differentiate(e: Expr) -> Expr:
    """Symbolic d/dx of ``e`` with light constant folding.

    Product and quotient rules share subtrees, so repeated derivatives are
    DAGs; shared nodes are differentiated once (memo keyed by identity).
    """
    memo = {}

    def d(node):
        hit = memo.get(id(node))
        if hit is None:
            hit = memo[id(node)] = (node, _diff(node, d))
        return hit[1]

    return d(e)


def _diff(e, d):
    if isinstance(e, Num):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Neg):
        return neg(d(e.arg))
    if isinstance(e, BinOp):
        u, v = e.left, e.right
        du, dv = d(u), d(v)
        if e.op == "+":
            return add(du, dv)
        if e.op == "-":
            return sub(du, dv)
        if e.op == "*":
            return add(mul(du, v), mul(u, dv))
        if e.op == "/":
            if _is_num(v):
                return div(du, v)
            return div(sub(mul(du, v), mul(u, dv)), power(v, 2))
    if isinstance(e, Pow):
        if e.exp == 0:
            return ZERO
        return mul(mul(Num(float(e.exp)), power(e.base, e.exp - 1)), d(e.base))
    if isinstance(e, Call):
        u = e.arg
        du = d(u)
        if _is_num(du, 0.0):
            return ZERO
        outer = {
            "sin": lambda: Call("cos", u),
            "cos": lambda: neg(Call("sin", u)),
            "exp": lambda: Call("exp", u),
            "log": lambda: div(ONE, u),
            "sqrt": lambda: div(ONE, mul(Num(2.0), Call("sqrt", u))),
            "abs": lambda: Call("sign", u),
            "sign": lambda: ZERO,
        }[e.name]()
        return mul(outer, du)
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# evaluation

_NP_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
    "sign": np.sign,
}


def evaluate(e: Expr, x, side: int = 0, h: float = 1e-6):
    """Evaluate ``e`` at scalar or array ``x``.

    ``side=+1/-1`` gives one-sided limits at kinks: wherever the argument of
    ``abs``/``sign`` is (numerically) zero, its sign is taken from the
    argument evaluated at ``x + side*h``.
    """
    scalar = np.ndim(x) == 0
    xa = np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        val = _eval(e, xa, side, h, {})
    val = np.broadcast_to(val, xa.shape).astype(float)
    return float(val) if scalar else val


def _eval(e, x, side, h, memo):
    # memo is keyed by node identity and valid for this x only
    hit = memo.get(id(e))
    if hit is None:
        hit = memo[id(e)] = (e, _eval_node(e, x, side, h, memo))
    return hit[1]


def _eval_node(e, x, side, h, memo):
    if isinstance(e, Num):
        return np.full_like(x, e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -_eval(e.arg, x, side, h, memo)
    if isinstance(e, BinOp):
        a = _eval(e.left, x, side, h, memo)
        b = _eval(e.right, x, side, h, memo)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        return a / b
    if isinstance(e, Pow):
        return _eval(e.base, x, side, h, memo) ** float(e.exp)
    if isinstance(e, Call):
        u = _eval(e.arg, x, side, h, memo)
        if side and e.name in ("abs", "sign"):
            s = np.sign(u)
            near = np.abs(u) < 1e-9
            if np.any(near):
                shifted = np.sign(_eval(e.arg, x + side * h, side, h, {}))
                s = np.where(near, shifted, s)
            return s * u if e.name == "abs" else s
        return _NP_FUNCS[e.name](u)
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# Taylor-mode derivatives
#
# Repeated symbolic differentiation grows geometrically (product and quotient
# rules), so derivative values of any order are computed instead by pushing
# truncated Taylor series through the tree: cost O(size * order^2).


def taylor_coefficients(e: Expr, x, order: int, side: int = 0, h: float = 1e-6):
    """Taylor coefficients c_0..c_order of ``e`` about each point of ``x``.

    Returns an array of shape ``(order + 1,) + shape(x)``; f^(k)(x) = k! c_k.
    ``side`` picks one-sided branches of abs/sign exactly as in :func:`evaluate`.
    """
    xa = np.asarray(x, dtype=float)
    flat = xa.reshape(-1)
    with np.errstate(all="ignore"):
        jet = _jet(e, flat, order, side, h, {})
    return np.broadcast_to(jet, (order + 1, flat.size)).reshape((order + 1,) + xa.shape).copy()


def evaluate_derivative(e: Expr, x, k: int, side: int = 0, h: float = 1e-6):
    """f^(k)(x) by Taylor-mode differentiation."""
    c = taylor_coefficients(e, x, k, side, h)[k] * math.factorial(k)
    return float(c) if np.ndim(x) == 0 else c


def _jconst(v, x, K):
    out = np.zeros((K + 1, x.size))
    out[0] = v
    return out


def _conv(a, b, k, lo=0):
    # sum_{i=lo}^{k-lo} a_i b_{k-i}
    if k - lo < lo:
        return 0.0
    return (a[lo : k - lo + 1] * b[k - lo : lo - 1 if lo else None : -1]).sum(axis=0)


def _jmul(a, b):
    out = np.empty_like(a)
    for k in range(a.shape[0]):
        out[k] = _conv(a, b, k)
    return out


def _jdiv(a, b):
    q = np.empty_like(a)
    q[0] = a[0] / b[0]
    for k in range(1, a.shape[0]):
        q[k] = (a[k] - (b[1 : k + 1] * q[k - 1 :: -1]).sum(axis=0)) / b[0]
    return q


def _jpow(u, n):
    if n < 0:
        return _jdiv(_jconst(1.0, u[0], u.shape[0] - 1), _jpow(u, -n))
    result, base = None, u
    while n:
        if n & 1:
            result = base if result is None else _jmul(result, base)
        n >>= 1
        if n:
            base = _jmul(base, base)
    return _jconst(1.0, u[0], u.shape[0] - 1) if result is None else result


def _weighted(u, w, k):
    # sum_{i=1}^{k} i u_i w_{k-i}
    i = np.arange(1, k + 1).reshape((-1,) + (1,) * (u.ndim - 1))
    return (i * u[1 : k + 1] * w[k - 1 :: -1]).sum(axis=0)


def _jcall(name, u):
    K = u.shape[0] - 1
    w = np.empty_like(u)
    if name == "exp":
        w[0] = np.exp(u[0])
        for k in range(1, K + 1):
            w[k] = _weighted(u, w, k) / k
        return w
    if name in ("sin", "cos"):
        s, c = np.empty_like(u), np.empty_like(u)
        s[0], c[0] = np.sin(u[0]), np.cos(u[0])
        for k in range(1, K + 1):
            s[k] = _weighted(u, c, k) / k
            c[k] = -_weighted(u, s, k) / k
        return s if name == "sin" else c
    if name == "log":
        w[0] = np.log(u[0])
        for k in range(1, K + 1):
            i = np.arange(1, k).reshape((-1,) + (1,) * (u.ndim - 1))
            acc = (i * w[1:k] * u[k - 1 : 0 : -1]).sum(axis=0) / k if k > 1 else 0.0
            w[k] = (u[k] - acc) / u[0]
        return w
    if name == "sqrt":
        w[0] = np.sqrt(u[0])
        for k in range(1, K + 1):
            w[k] = (u[k] - _conv(w, w, k, lo=1)) / (2.0 * w[0])
        return w
    raise TypeError(f"no Taylor rule for {name!r}")


def _jet(e, x, K, side, h, memo):
    hit = memo.get(id(e))
    if hit is None:
        hit = memo[id(e)] = (e, _jet_node(e, x, K, side, h, memo))
    return hit[1]


def _jet_node(e, x, K, side, h, memo):
    if isinstance(e, Num):
        return _jconst(e.value, x, K)
    if isinstance(e, Var):
        out = _jconst(0.0, x, K)
        out[0] = x
        if K >= 1:
            out[1] = 1.0
        return out
    if isinstance(e, Neg):
        return -_jet(e.arg, x, K, side, h, memo)
    if isinstance(e, BinOp):
        a = _jet(e.left, x, K, side, h, memo)
        b = _jet(e.right, x, K, side, h, memo)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return _jmul(a, b)
        return _jdiv(a, b)
    if isinstance(e, Pow):
        return _jpow(_jet(e.base, x, K, side, h, memo), e.exp)
    if isinstance(e, Call):
        u = _jet(e.arg, x, K, side, h, memo)
        if e.name in ("abs", "sign"):
            s = np.sign(u[0])
            if side:
                near = np.abs(u[0]) < 1e-9
                if np.any(near):
                    s = np.where(near, np.sign(_eval(e.arg, x + side * h, side, h, {})), s)
            if e.name == "abs":
                return s * u
            return _jconst(0.0, x, K) + np.concatenate([s[None], np.zeros((K, x.size))])
        return _jcall(e.name, u)
    raise TypeError(f"not an expression: {e!r}")


def kink_arguments(e: Expr):
    """Arguments of every abs/sign call in ``e`` (outermost first)."""
    out = []

    def walk(node):
        if isinstance(node, Call):
            if node.name in ("abs", "sign"):
                out.append(node.arg)
            walk(node.arg)
        elif isinstance(node, Neg):
            walk(node.arg)
        elif isinstance(node, BinOp):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Pow):
            walk(node.base)

    walk(e)
    return out


# ---------------------------------------------------------------------------
# FunctionSpec

BREAKPOINT_SCAN_POINTS = 2048
BREAKPOINT_TOL = 1e-13
DEFAULT_CACHE_ORDER = 2
JUMP_SEARCH_CAP = 64


@dataclass(frozen=True)
class Override:
    value: float
    note: str = ""


@dataclass(frozen=True)
class FunctionSpec:
    """A function on [-1, 1] with its symbolic derivative chain.

    ``derivatives[k]`` is the classical k-th derivative as an expression;
    values of orders past this cache come from Taylor-mode differentiation.  ``max_smooth_order`` is the largest k for
    which f^(k) is pointwise representable (``math.inf`` when unlimited);
    f^(k+1) then carries point masses that only ``overrides`` can describe.
    """

    expr: Expr
    derivatives: tuple
    breakpoints: tuple = ()
    overrides: Mapping = field(default_factory=dict)
    max_smooth_order: float = math.inf
    name: str = ""

    def derivative(self, k: int) -> Expr:
        if k < len(self.derivatives):
            return self.derivatives[k]
        e = self.derivatives[-1]
        for _ in range(k - len(self.derivatives) + 1):
            e = differentiate(e)
        return e

    def eval(self, x, k: int = 0, side: int = 0):
        if k < len(self.derivatives):
            return evaluate(self.derivatives[k], x, side)
        return evaluate_derivative(self.expr, x, k, side)

    def __call__(self, x):
        return self.eval(x)

    def scaled(self, c: float) -> "FunctionSpec":
        """c * f, with overrides scaled by |c|."""
        cn = Num(float(c))
        return FunctionSpec(
            mul(cn, self.expr),
            tuple(mul(cn, d) for d in self.derivatives),
            self.breakpoints,
            {k: Override(abs(c) * v.value, v.note) for k, v in self.overrides.items()},
            self.max_smooth_order,
            f"{c!r}*({self.name})",
        )


def derivative_chain(e: Expr, order: int):
    chain = [e]
    for _ in range(order):
        chain.append(differentiate(chain[-1]))
    return tuple(chain)


def _roots_of(u: Expr):
    xs = np.linspace(-1.0, 1.0, BREAKPOINT_SCAN_POINTS + 1)
    vs = evaluate(u, xs)
    roots = [float(x) for x, v in zip(xs[1:-1], vs[1:-1]) if v == 0.0]
    for i in np.nonzero(vs[:-1] * vs[1:] < 0)[0]:
        a, b, fa = float(xs[i]), float(xs[i + 1]), vs[i]
        while b - a > BREAKPOINT_TOL:
            m = 0.5 * (a + b)
            fm = evaluate(u, m)
            if fm == 0.0:
                a = b = m
                break
            if (fm < 0) == (fa < 0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    return roots


def detect_breakpoints(e: Expr):
    roots = sorted(r for u in kink_arguments(e) for r in _roots_of(u) if -1.0 < r < 1.0)
    merged = []
    for r in roots:
        if not merged or r - merged[-1] > 1e-12:
            merged.append(r)
    return tuple(merged)


def smooth_order(e: Expr, breakpoints):
    """First k at which f^(k) jumps across a breakpoint (inf if none found).

    One-sided Taylor coefficients are compared at every breakpoint; a
    non-finite one-sided value also counts (the derivative is not pointwise
    representable there).
    """
    if not breakpoints:
        return math.inf
    bps = np.asarray(breakpoints, dtype=float)
    left = taylor_coefficients(e, bps, JUMP_SEARCH_CAP, side=-1)
    right = taylor_coefficients(e, bps, JUMP_SEARCH_CAP, side=+1)
    grid = taylor_coefficients(e, np.linspace(-1.0, 1.0, 257), JUMP_SEARCH_CAP)
    for k in range(JUMP_SEARCH_CAP + 1):
        finite = np.abs(grid[k][np.isfinite(grid[k])])
        scale = max(1.0, float(finite.max()) if finite.size else 0.0, float(np.nanmax(np.abs(left[k]))))
        with np.errstate(invalid="ignore"):
            jump = np.abs(right[k] - left[k]) > 1e-8 * scale
        bad = ~np.isfinite(left[k]) | ~np.isfinite(right[k]) | jump
        if np.any(bad):
            return k
    return math.inf


def _parse_override_key(key):
    if isinstance(key, tuple) and len(key) == 2:
        kind, r = key
    elif isinstance(key, str):
        m = re.fullmatch(r"(U|V|Vhat):(\d+)", key)
        if not m:
            raise OverrideKeyError(f"override key {key!r} must look like 'U:3', 'V:2' or 'Vhat:1'")
        kind, r = m.group(1), int(m.group(2))
    else:
        raise OverrideKeyError(f"bad override key {key!r}")
    if kind not in ("U", "V", "Vhat") or int(r) != r or r < 0:
        raise OverrideKeyError(f"bad override key {key!r}")
    return kind, int(r)


def parse_override(text: str):
    """Parse ``'U:3=2.0'`` into ``(('U', 3), Override(2.0))``."""
    if "=" not in text:
        raise OverrideKeyError(f"override {text!r} must look like KIND:R=VALUE")
    key, value = text.split("=", 1)
    try:
        v = float(value)
    except ValueError:
        raise OverrideKeyError(f"override value {value!r} is not a number") from None
    return _parse_override_key(key.strip()), Override(v, "user override")


def _normalize_overrides(overrides):
    out = {}
    if not overrides:
        return out
    items = overrides.items() if isinstance(overrides, Mapping) else overrides
    for key, val in items:
        k = _parse_override_key(key)
        out[k] = val if isinstance(val, Override) else Override(float(val), "user override")
    return out


def make_function_spec(source: str, overrides=None, cache_order: int = DEFAULT_CACHE_ORDER) -> FunctionSpec:
    """Parse ``source``, build its derivative chain, locate kinks."""
    e = parse(source)
    chain = derivative_chain(e, cache_order)
    bps = detect_breakpoints(e)
    return FunctionSpec(e, chain, bps, _normalize_overrides(overrides), smooth_order(e, bps), source)


def fj_source(j: int, t: float) -> str:
    """Source text of (x-t)^(j-1) |x-t| / j!."""
    shift = f"x - {t!r}" if t >= 0 else f"x + {-t!r}"
    return f"(1/{math.factorial(j)})*({shift})^{j - 1}*abs({shift})"


def builtin_fj(j: int, t: float) -> FunctionSpec:
    """f_j(x) = (x-t)^(j-1) |x-t| / j! with its closed-form derivative chain.

    f_j^(k) = (x-t)^(j-1-k) |x-t| / (j-k)! for k <= j-1 and f_j^(j) = sign(x-t).
    The (j+1)-th derivative is 2 delta(x-t); its seminorms are supplied as
    overrides: U_j = 2, V_j = 2/sqrt(1-t^2), Vhat_j = 2/(1-t^2)^(1/4).
    """
    if int(j) != j or j < 2:
        raise DomainError(f"j must be an integer >= 2, got {j!r}")
    if not -1.0 < t < 1.0:
        raise DomainError(f"t must lie in (-1, 1), got {t!r}")
    u = sub(X, Num(float(t)))
    chain = []
    for k in range(j):
        coeff = Num(1.0 / math.factorial(j - k))
        chain.append(mul(mul(coeff, power(u, j - 1 - k)), Call("abs", u)))
    chain.append(Call("sign", u))
    w = 1.0 - t * t
    overrides = {
        ("U", j): Override(2.0, "integral of 2*delta(x-t)"),
        ("V", j): Override(2.0 / math.sqrt(w), "2*delta(x-t) against (1-x^2)^(-1/2)"),
        ("Vhat", j): Override(2.0 / w**0.25, "2*delta(x-t) against (1-x^2)^(-1/4)"),
    }
    return FunctionSpec(chain[0], tuple(chain), (float(t),), overrides, j, f"f_{j}(t={t!r})")
