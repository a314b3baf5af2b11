"""Command-line front end: seeded sweeps, identity batteries, and plots.

Exit codes: 0 success, 1 configuration or guard failure, 2 hard invariant
violation (a constant-1 inequality or exact identity failed on real data).
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, GuardTripped, MissingReport, TooLarge
from .experiments import (
    KINDS,
    load_config_file,
    make_config,
    render_csv,
    render_json,
    run,
    write_report,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expsumlab",
        description="exponential-sum and arithmetic-energy experiments over "
        "prime fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        sp = sub.add_parser(kind, help=f"run a {kind} sweep")
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--seed", type=int, help="override the base seed")
        sp.add_argument("--threads", type=int, help="worker threads")
        sp.add_argument("--out", help="report path (stdout if omitted)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--reps", type=int, help="repetitions per prime")
        sp.add_argument("--primes", help="comma-separated primes")
        sp.add_argument("--timing", action="store_true",
                        help="record wall-clock ms (breaks byte-identity)")
    pp = sub.add_parser("plot", help="chart ratios from a report")
    pp.add_argument("--report", required=True, help="CSV report to read")
    pp.add_argument("--out", required=True, help="image file to write")
    pp.add_argument("--by", choices=("p", "cards"), default="p",
                    help="x axis: prime or product of cardinalities")
    return parser


def _config_from_args(args: argparse.Namespace) -> dict:
    data = load_config_file(args.config) if args.config else {}
    if args.seed is not None:
        data["seed"] = args.seed
    if args.threads is not None:
        data["threads"] = args.threads
    if args.out is not None:
        data["out"] = args.out
    if args.reps is not None:
        data["reps"] = args.reps
    if args.primes is not None:
        try:
            data["primes"] = [int(tok) for tok in args.primes.split(",") if tok]
        except ValueError as exc:
            raise ConfigError(f"bad --primes value {args.primes!r}") from exc
    if args.timing:
        data["timing"] = True
    return data


def _run_command(args: argparse.Namespace) -> int:
    cfg = make_config(_config_from_args(args), kind=args.command)
    result = run(cfg)
    rows = result.rows
    if cfg.out:
        write_report(rows, cfg.out, args.format)
        print(f"wrote {len(rows)} rows to {cfg.out}")
    else:
        text = render_csv(rows) if args.format == "csv" else render_json(rows)
        sys.stdout.write(text)
    for msg in result.violations:
        print(f"invariant violation: {msg}", file=sys.stderr)
    return result.exit_code


def _plot_command(args: argparse.Namespace) -> int:
    import csv
    import os

    if not os.path.exists(args.report):
        raise MissingReport(f"report not found: {args.report}")
    series: dict[str, list[tuple[float, float]]] = {}
    with open(args.report, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            if row["exp_id"] == "summary":
                continue
            if args.by == "p":
                x = float(row["p"])
            else:
                cards = row["cards"]
                if not cards:
                    continue
                x = 1.0
                for tok in cards.split("x"):
                    x *= int(tok)
            series.setdefault(row["bound"], []).append((x, float(row["ratio"])))

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))
    for bound in sorted(series):
        pts = sorted(series[bound])
        ax.plot([x for x, _ in pts], [y for _, y in pts], marker="o",
                linestyle="-", markersize=3, linewidth=0.8, label=bound)
    ax.set_xlabel("prime p" if args.by == "p" else "product of cardinalities")
    ax.set_ylabel("observed / bound")
    ax.set_yscale("log")
    if series:
        ax.legend(fontsize=7)
    ax.set_title("bound tightness")
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)
    plt.close(fig)
    print(f"wrote {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "plot":
            return _plot_command(args)
        return _run_command(args)
    except (ConfigError, MissingReport) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GuardTripped, TooLarge) as exc:
        print(f"workload rejected: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
