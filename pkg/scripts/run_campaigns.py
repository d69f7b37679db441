#!/usr/bin/env python3
"""Run randomized equivalence campaigns for both rewrite modes.

For each requested mode this generates random formulas and traces, wraps
each formula in a random temporal box, normalizes it, and checks the
rewrite against the interval evaluator and the pointwise oracle.  A
summary line is printed per campaign; --json dumps the full reports.

Exit status: 0 if every campaign is failure-free, 1 otherwise.

Examples:
    python3 scripts/run_campaigns.py --trials 200 --seed 7
    python3 scripts/run_campaigns.py --mode mitl --kappa 1/2 --lam 1/3 --json
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from bmtl.harness import CampaignReport, GenConfig, run_campaign
from bmtl.rewrite import Punctual, SingletonFree


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _summary(report: CampaignReport) -> str:
    return (
        f"mode={report.mode} trials={report.trials} passes={report.passes} "
        f"failures={len(report.failures)} empty_regions={report.empty_regions} "
        f"wall_time_s={report.wall_time_s:.2f}"
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--mode",
        choices=("punctual", "mitl", "both"),
        default="both",
        help="which rewrite mode(s) to exercise (default: both)",
    )
    parser.add_argument("--trials", type=int, default=100, help="trials per campaign")
    parser.add_argument("--seed", type=int, default=0, help="campaign seed")
    parser.add_argument("--max-depth", type=int, default=3, help="formula depth limit")
    parser.add_argument(
        "--kappa",
        type=_fraction,
        default=None,
        help="fixed forward persistence slack for mitl mode (default: per-trial random)",
    )
    parser.add_argument(
        "--lam",
        type=_fraction,
        default=None,
        help="fixed backward persistence slack for mitl mode (default: per-trial random)",
    )
    parser.add_argument("--json", action="store_true", help="print full JSON reports")
    args = parser.parse_args(argv)

    cfg = GenConfig(seed=args.seed, max_depth=args.max_depth, trials=args.trials)
    modes = []
    if args.mode in ("punctual", "both"):
        modes.append(Punctual())
    if args.mode in ("mitl", "both"):
        modes.append(SingletonFree(kappa=args.kappa, lam=args.lam))

    reports = [run_campaign(cfg, mode) for mode in modes]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for report in reports:
            print(_summary(report))
            for failure in report.failures:
                print(f"  [{failure.kind}] trial {failure.trial}: {failure.formula}", file=sys.stderr)

    return 0 if all(not r.failures for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
