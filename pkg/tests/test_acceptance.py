"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test records a single PASS/FAIL line, printed in the terminal summary.
"""

import random
import time

import numpy as np

from legbound import tables, verify
from legbound.bounds import soundness_sweep
from legbound.expansion import (
    s_value_closed,
    s_value_definition,
    verify_expansion_identity,
    verify_gamma_identity,
    verify_s_recursion,
)
from legbound.funcdsl import (
    FUNCTIONS,
    X,
    BinOp,
    Call,
    Neg,
    Num,
    Pow,
    builtin_fj,
    differentiate,
    evaluate,
    make_function_spec,
    parse,
    pretty,
)
from legbound.quadrature import gauss_legendre_rule

SMOOTH_CORPUS = ("exp(x)", "sin(3*x)", "x^6 - 2*x^3 + 0.5*x - 0.25")


def test_criterion_1_expansion_identity(acceptance):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for n in range(2, 17):
        for r in range(1, min(n - 1, 10) + 1):
            v = verify_expansion_identity(n, r)
            count += 1
            if not (v.passed and v.residual == 0.0):
                bad.append((n, r, v.residual))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    acceptance(1, ok, f"expansion identity exact on {count} (n, r) pairs, {len(bad)} nonzero, {elapsed:.1f}s (< 60s)")
    assert ok, bad[:5]


def test_criterion_2_s_values(acceptance):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for n in range(1, 25):
        for r in range(0, n):
            d, c = s_value_definition(n, r).value, s_value_closed(n, r).value
            rec_ok = r == 0 or verify_s_recursion(n, r).passed
            count += 1
            if d != c or not rec_ok:
                bad.append((n, r))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 10
    acceptance(2, ok, f"definition = closed form = recursion on {count} pairs, {len(bad)} mismatches, {elapsed:.2f}s (< 10s)")
    assert ok, bad[:5]


def test_criterion_3_gamma_identity(acceptance):
    t0 = time.perf_counter()
    worst = 0.0
    bad = []
    for n in range(2, 101):
        for r in range(1, min(n - 1, 10) + 1):
            v = verify_gamma_identity(n, r, rtol=1e-11)
            worst = max(worst, v.residual)
            if not v.passed:
                bad.append((n, r, v.residual))
    elapsed = time.perf_counter() - t0
    ok = not bad and worst <= 1e-11 and elapsed < 10
    acceptance(3, ok, f"max relative residual {worst:.2e} (<= 1e-11), {elapsed:.2f}s (< 10s)")
    assert ok, bad[:5]


def test_criterion_4_quadrature_exactness(acceptance):
    worst = 0.0
    for q in (2, 5, 10, 20, 50):
        rule = gauss_legendre_rule(q)
        for k in range(2 * q):
            exact = 0.0 if k % 2 else 2.0 / (k + 1)
            got = rule.apply(lambda x: x**k)
            worst = max(worst, abs(got - exact) / max(abs(exact), 1.0))
    ok = worst <= 1e-13
    acceptance(4, ok, f"max relative error on degree <= 2q-1 monomials {worst:.2e} (<= 1e-13)")
    assert ok


def test_criterion_5_soundness(acceptance):
    t0 = time.perf_counter()
    corpus = [make_function_spec(s) for s in SMOOTH_CORPUS]
    corpus += [builtin_fj(j, t) for j in (2, 3, 5) for t in (-0.3, 0.0, 0.5)]
    res = soundness_sweep(corpus, N_max=30, r_max=6)
    elapsed = time.perf_counter() - t0
    ok = res.ok and res.checks > 0 and elapsed < 300
    acceptance(
        5, ok, f"{res.checks} bound checks, {len(res.violations)} violations, {elapsed:.1f}s (< 300s)"
    )
    assert ok, res.violations[:5]


def test_criterion_6_table1(acceptance):
    res = tables.table1()
    theta_ok = all(row["theta_flag"] == "agree" for row in res.rows)
    rows_ok = all(row["gamma_lt_theta"] == "yes" for row in res.rows)
    sweep = tables.gamma_theta_sweep(40)
    ok = theta_ok and rows_ok and not sweep
    cex = ", ".join(f"({n},{r}) gamma={g:.4e} theta={t:.4e}" for n, r, g, t in sweep[:3])
    acceptance(
        6,
        ok,
        f"theta 2 s.f. on 7 rows: {theta_ok}; gamma < theta on 7 rows: {rows_ok}; "
        f"sweep n <= 40 counterexamples: {len(sweep)}" + (f" [{cex}, ...]" if sweep else "")
        + f"; soft gamma mismatches logged: {len(res.soft_mismatches)}",
    )
    assert theta_ok and rows_ok
    assert not sweep, f"gamma >= theta at {[(n, r) for n, r, _, _ in sweep]}"


def test_criterion_7_table2(acceptance):
    t0 = time.perf_counter()
    res = tables.table2()
    elapsed = time.perf_counter() - t0
    ordering = all(row["thm2_lt_wang21"] == "yes" for row in res.rows)
    sound = all(row["measured_le_thm2"] == "yes" for row in res.rows)
    ok = ordering and sound and elapsed < 120
    acceptance(
        7,
        ok,
        f"thm2 < wang21 on 6 cells: {ordering}; measured <= thm2: {sound}; "
        f"soft mismatches logged: {len(res.soft_mismatches)}; {elapsed:.1f}s (< 120s)",
    )
    for line in res.soft_mismatches:
        print("  soft:", line)
    assert ok, res.hard_failures


def test_criterion_8_inequality_audits(acceptance):
    hard = []
    soft = []
    for lemma in ("ll", "eqb"):
        rep = verify.run(lemma, range(1, 201))
        hard += rep.hard_failures
        soft += [ln for ln in rep.lines if ln.status == "violation"]
    rep = verify.run("eqb2", range(1, 201))
    hard += rep.hard_failures
    durand = [verify.audit_durand(n) for n in range(0, 201)]
    hard += [ln for ln in durand if ln.status == "fail"]
    soft_degrees = sorted({ln.n for ln in soft})
    ok = not hard and set(soft_degrees) <= {1, 2}
    acceptance(
        8,
        ok,
        f"hard failures {len(hard)} over LL/eqb (3..200), eqb2 (1..200), Durand (0..200); "
        f"audit-only findings at n = {soft_degrees}",
    )
    assert ok, [ln.to_line() for ln in hard[:5]]


def _random_ast(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return X if rng.random() < 0.5 else Num(round(rng.uniform(0, 100), rng.randint(0, 6)))
    kind = rng.randrange(4)
    if kind == 0:
        return Neg(_random_ast(rng, depth - 1))
    if kind == 1:
        return BinOp(rng.choice("+-*/"), _random_ast(rng, depth - 1), _random_ast(rng, depth - 1))
    if kind == 2:
        return Pow(_random_ast(rng, depth - 1), rng.randint(-4, 6))
    return Call(rng.choice(FUNCTIONS), _random_ast(rng, depth - 1))


def test_criterion_9_dsl(acceptance):
    rng = random.Random(20240531)
    failures = []
    for _ in range(1000):
        e = _random_ast(rng, 6)
        if parse(pretty(e)) != e:
            failures.append(pretty(e))
    xs = np.linspace(-0.9, 0.9, 37)
    h = 1e-5
    worst = 0.0
    for src in SMOOTH_CORPUS + ("cos(x)^2/(2 + x)", "sqrt(2 + x)*log(3 - x)", "exp(sin(x))/(3 + x^2)"):
        e = parse(src)
        d = differentiate(e)
        fd = (evaluate(e, xs + h) - evaluate(e, xs - h)) / (2 * h)
        worst = max(worst, float(np.max(np.abs(evaluate(d, xs) - fd) / np.maximum(1.0, np.abs(fd)))))
    ok = not failures and worst <= 1e-6
    acceptance(9, ok, f"round trip 1000 cases, {len(failures)} failures; max derivative vs central difference {worst:.1e} (<= 1e-6)")
    assert ok, failures[:3]
