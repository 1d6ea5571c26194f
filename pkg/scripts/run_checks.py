#!/usr/bin/env python3
"""Run every registered invariant suite and print a summary table.

    python scripts/run_checks.py [--seed N] [--cases N] [suite ...]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from dvfields.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("suites", nargs="*", default=[])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=None)
    args = ap.parse_args()
    names = args.suites or list(SUITES)
    width = max(len(n) for n in names)
    bad = 0
    total = 0.0
    for name in names:
        res = run_suite(name, seed=args.seed, cases=args.cases)
        total += res.seconds
        mark = "ok" if res.ok() else "FAIL"
        print(f"{name:<{width}s}  {mark:4s} cases={res.cases:<5d} {res.seconds:7.2f}s")
        for f in res.failures:
            print(f"    {f}")
            bad += 1
    print(f"{'-' * (width + 30)}\ntotal {total:.1f}s, {bad} failing suite case(s)")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
