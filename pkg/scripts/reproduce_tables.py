#!/usr/bin/env python3
"""Recompute both comparison tables and print them next to the printed digits.

Usage: python3 scripts/reproduce_tables.py [--format md|csv|json] [--t 0.0]
"""

import argparse
import sys

from legbound import tables


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=["md", "csv", "json"], default="md")
    ap.add_argument("--t", type=float, default=0.0, help="kink location for table 2")
    ap.add_argument("--sweep-n-max", type=int, default=40)
    args = ap.parse_args(argv)

    failed = False
    for res in (tables.table1(), tables.table2(args.t)):
        print(f"## table {res.which}")
        print(getattr(res, {"md": "to_markdown", "csv": "to_csv", "json": "to_json"}[args.format])())
        for line in res.hard_failures:
            print("HARD:", line)
        for line in res.soft_mismatches:
            print("soft:", line)
        failed |= not res.ok

    sweep = tables.gamma_theta_sweep(args.sweep_n_max)
    print(f"## gamma < theta sweep, n <= {args.sweep_n_max}: {len(sweep)} counterexamples")
    for n, r, g, t in sweep:
        print(f"n={n} r={r} gamma={g!r} theta={t!r} ratio={g / t:.6f}")
    return 1 if failed or sweep else 0


if __name__ == "__main__":
    sys.exit(main())
