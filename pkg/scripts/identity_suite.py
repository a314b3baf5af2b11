#!/usr/bin/env python3
# Run the full identity battery (exact identities and constant-1 inequalities
# on real random data) and exit nonzero if anything is violated.  This is the
# quick self-check to run after touching any evaluator.

import argparse
import sys

from expsumlab.experiments import make_config, run

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", default="7,31,101,257")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()

    cfg = make_config(
        {
            "primes": [int(t) for t in args.primes.split(",")],
            "seed": args.seed,
            "reps": args.reps,
        },
        kind="identity-suite",
    )
    result = run(cfg)
    checks = len(result.rows)
    if result.violations:
        for msg in result.violations:
            print(f"VIOLATION {msg}", file=sys.stderr)
        print(f"{checks} checks, {len(result.violations)} violations")
        sys.exit(2)
    print(f"{checks} checks across p in {{{args.primes}}}: all identities hold")
