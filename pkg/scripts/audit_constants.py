#!/usr/bin/env python3
# Sweep every implemented bound over random / interval / subgroup families and
# report the observed constants (max and mean of observed/bound per bound name).
# Writes the full CSV plus two ratio charts next to it.

import argparse
import sys

from expsumlab.cli import main as cli_main


def run(out_dir: str, primes: str, seed: int, reps: int) -> int:
    report = f"{out_dir}/audit_constants.csv"
    code = cli_main([
        "audit-bounds", "--primes", primes, "--seed", str(seed),
        "--reps", str(reps), "--out", report,
    ])
    if code != 0:
        return code
    for by in ("p", "cards"):
        code = cli_main([
            "plot", "--report", report, "--out",
            f"{out_dir}/audit_constants_by_{by}.png", "--by", by,
        ])
        if code != 0:
            return code

    with open(report, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.startswith("summary,")]
    print()
    print(f"{'bound':42s} {'max':>10s} {'mean':>10s} {'min':>10s}")
    for ln in lines:
        cols = ln.split(",")
        # summary rows: lhs = max ratio, rhs = mean ratio, ratio = min ratio
        print(f"{cols[5]:42s} {float(cols[6]):10.4f} "
              f"{float(cols[8]):10.4f} {float(cols[9]):10.4f}")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=".")
    ap.add_argument("--primes", default="31,101,257")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    sys.exit(run(args.out_dir, args.primes, args.seed, args.reps))
