#!/usr/bin/env python3
"""Check every bound against measured coefficients and truncation errors.

Usage: python3 scripts/soundness_sweep.py [--N-max 30] [--r-max 6] [--func EXPR ...]
"""

import argparse
import sys
import time

from legbound.bounds import soundness_sweep
from legbound.funcdsl import builtin_fj, make_function_spec

DEFAULT_FUNCS = ("exp(x)", "sin(3*x)", "x^6 - 2*x^3 + 0.5*x - 0.25")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N-max", type=int, default=30)
    ap.add_argument("--r-max", type=int, default=6)
    ap.add_argument("--func", action="append", help="extra expressions (default corpus if omitted)")
    ap.add_argument("--no-fj", action="store_true", help="skip the builtin f_j family")
    args = ap.parse_args(argv)

    funcs = [make_function_spec(s) for s in (args.func or DEFAULT_FUNCS)]
    if not args.no_fj:
        funcs += [builtin_fj(j, t) for j in (2, 3, 5) for t in (-0.3, 0.0, 0.5)]

    t0 = time.perf_counter()
    res = soundness_sweep(funcs, N_max=args.N_max, r_max=args.r_max)
    elapsed = time.perf_counter() - t0
    print(f"functions={len(funcs)} checks={res.checks} inapplicable={res.inapplicable} "
          f"violations={len(res.violations)} seconds={elapsed:.1f}")
    for name, kind, idx, r, measured, bound in res.violations:
        print(f"VIOLATION {name} {kind} index={idx} r={r} measured={measured!r} bound={bound!r}")
    return 0 if res.ok else 1


if __name__ == "__main__":
    sys.exit(main())
