"""Command-line interface.

Subcommands: parse, rewrite, eval, census, check.  Machine-readable
output goes to stdout, diagnostics to stderr.  Exit codes: 0 success
(and campaigns with zero failures), 1 campaign failures, 2 syntax
errors, 3 rewrite precondition violations, 4 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .errors import BmtlError, RewriteError
from .evaluate import eval_truth_set, reliable_region
from .harness import GenConfig, run_campaign
from .intervals import Interval, IntervalSet
from .parser import parse_formula
from .rewrite import Punctual, RewriteMode, SingletonFree, normalize
from .syntax import Formula, census, print_formula, s_expression
from .traces import parse_trace

EXIT_OK = 0
EXIT_CAMPAIGN_FAILURES = 1
EXIT_SYNTAX = 2
EXIT_REWRITE = 3
EXIT_IO = 4


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _interval_json(p: Interval) -> dict:
    return {
        "lo": str(p.lo),
        "hi": str(p.hi),
        "lo_closed": p.lo_closed,
        "hi_closed": p.hi_closed,
    }


def _set_json(s: IntervalSet) -> list[dict]:
    return [_interval_json(p) for p in s.parts]


def _fail(message: str, exit_code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return exit_code


def _load_formula(ns) -> Formula:
    if ns.file is not None:
        if ns.formula is not None:
            raise _UsageError("give a formula inline or via --file, not both")
        try:
            with open(ns.file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise _IOFailure(str(e))
    else:
        if ns.formula is None:
            raise _UsageError("a formula is required (inline or via --file)")
        text = ns.formula
    return parse_formula(text)


class _UsageError(Exception):
    pass


class _IOFailure(Exception):
    pass


def _build_mode(ns) -> RewriteMode:
    if ns.mode == "punctual":
        if ns.kappa is not None or getattr(ns, "lam", None) is not None:
            raise _UsageError("--kappa/--lambda only apply to --mode mitl")
        return Punctual()
    return SingletonFree(kappa=ns.kappa, lam=ns.lam)


def _cmd_parse(ns) -> int:
    f = _load_formula(ns)
    if ns.json:
        print(json.dumps({"ast": s_expression(f)}))
    else:
        print(s_expression(f))
    return EXIT_OK


def _cmd_rewrite(ns) -> int:
    f = _load_formula(ns)
    mode = _build_mode(ns)
    report = normalize(f, mode)
    if ns.json:
        payload = {"formula": print_formula(report.output)}
        if ns.report:
            payload["applied"] = [
                {
                    "rule": app.rule,
                    "path": list(app.path),
                    **(
                        {"kappa": str(app.kappa), "lambda": str(app.lam)}
                        if app.kappa is not None
                        else {}
                    ),
                }
                for app in report.applied
            ]
        print(json.dumps(payload))
    else:
        print(print_formula(report.output))
        if ns.report:
            for app in report.applied:
                where = ".".join(str(i) for i in app.path) or "root"
                extra = (
                    f" kappa={app.kappa} lambda={app.lam}" if app.kappa is not None else ""
                )
                print(f"applied {app.rule} at {where}{extra}")
    return EXIT_OK


def _cmd_eval(ns) -> int:
    f = _load_formula(ns)
    try:
        with open(ns.trace, "r", encoding="utf-8") as fh:
            trace_text = fh.read()
    except OSError as e:
        raise _IOFailure(str(e))
    tr = parse_trace(trace_text)
    truth = eval_truth_set(f, tr)
    region = reliable_region(f, tr)
    if ns.json:
        print(
            json.dumps(
                {
                    "truth": _set_json(truth),
                    "reliable": _interval_json(region) if region is not None else None,
                }
            )
        )
    else:
        print(f"truth: {truth}")
        print(f"reliable: {region if region is not None else 'empty'}")
    return EXIT_OK


def _cmd_census(ns) -> int:
    f = _load_formula(ns)
    c = census(f)
    if ns.json:
        print(
            json.dumps(
                {
                    "counts": dict(sorted(c.counts.items())),
                    "has_singleton_bound": c.has_singleton_bound,
                    "max_depth": c.max_depth,
                }
            )
        )
    else:
        for name in sorted(c.counts):
            print(f"{name}: {c.counts[name]}")
        print(f"has_singleton_bound: {str(c.has_singleton_bound).lower()}")
        print(f"max_depth: {c.max_depth}")
    return EXIT_OK


def _cmd_check(ns) -> int:
    mode = _build_mode(ns)
    cfg = GenConfig(
        seed=ns.seed,
        trials=ns.trials,
        max_depth=ns.max_depth,
        bound_max=ns.bound_max,
        bound_denominator_max=ns.bound_denominator_max,
        facts_per_trace=ns.facts,
        horizon_length=ns.horizon_length,
    )
    report = run_campaign(cfg, mode)
    if ns.json:
        print(json.dumps(report.to_json()))
    else:
        print(f"mode: {report.mode}")
        print(
            f"trials: {report.trials}  passes: {report.passes}  "
            f"failures: {len(report.failures)}  empty-region: {report.empty_regions}"
        )
        print(f"elapsed: {report.wall_time_s:.1f}s")
        for failure in report.failures[:5]:
            print(
                f"failure (trial {failure.trial}, {failure.kind}): {failure.formula}",
                file=sys.stderr,
            )
    return EXIT_OK if not report.failures else EXIT_CAMPAIGN_FAILURES


def _add_formula_args(sub: argparse.ArgumentParser):
    sub.add_argument("formula", nargs="?", help="formula text (or use --file)")
    sub.add_argument("--file", help="read the formula from this path")
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="bmtl",
        description="Bounded metric temporal logic: parse, rewrite, evaluate, census, check.",
    )
    subs = top.add_subparsers(dest="command", required=True)

    p_parse = subs.add_parser("parse", help="parse a formula and print its AST")
    _add_formula_args(p_parse)
    p_parse.set_defaults(func=_cmd_parse)

    p_rw = subs.add_parser("rewrite", help="normalize away boxes and diamonds")
    _add_formula_args(p_rw)
    p_rw.add_argument("--mode", choices=("punctual", "mitl"), required=True)
    p_rw.add_argument("--kappa", type=_fraction_arg, default=None)
    p_rw.add_argument("--lambda", dest="lam", type=_fraction_arg, default=None)
    p_rw.add_argument("--report", action="store_true", help="list applied rules")
    p_rw.set_defaults(func=_cmd_rewrite)

    p_eval = subs.add_parser("eval", help="evaluate a formula over a trace")
    _add_formula_args(p_eval)
    p_eval.add_argument("--trace", required=True, help="trace file path")
    p_eval.set_defaults(func=_cmd_eval)

    p_census = subs.add_parser("census", help="operator counts and bound shapes")
    _add_formula_args(p_census)
    p_census.set_defaults(func=_cmd_census)

    p_check = subs.add_parser("check", help="run a rewrite-equivalence campaign")
    p_check.add_argument("--mode", choices=("punctual", "mitl"), required=True)
    p_check.add_argument("--kappa", type=_fraction_arg, default=None)
    p_check.add_argument("--lambda", dest="lam", type=_fraction_arg, default=None)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--trials", type=int, default=100)
    p_check.add_argument("--max-depth", type=int, default=3)
    p_check.add_argument("--bound-max", type=_fraction_arg, default=Fraction(4))
    p_check.add_argument("--bound-denominator-max", type=int, default=4)
    p_check.add_argument("--facts", type=int, default=5)
    p_check.add_argument("--horizon-length", type=_fraction_arg, default=Fraction(40))
    p_check.add_argument("--json", action="store_true")
    p_check.set_defaults(func=_cmd_check)

    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except _UsageError as e:
        return _fail(str(e), EXIT_SYNTAX)
    except _IOFailure as e:
        return _fail(str(e), EXIT_IO)
    except RewriteError as e:
        return _fail(f"[{e.code}] {e}", EXIT_REWRITE)
    except BmtlError as e:
        return _fail(f"[{e.code}] {e}", EXIT_SYNTAX)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
