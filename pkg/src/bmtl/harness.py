"""Randomized equivalence campaigns for the rewriting pipeline.

Reproducibility: every random draw comes from a Mersenne Twister seeded
with a splitmix64-style mix of (campaign seed, stream tag, stream
index), so a (seed, config) pair fully determines every formula, trace,
wrapper box, slack value and sample point, independently of iteration
interleaving.  Reports are deterministic modulo wall time.

A trial generates a negation-free formula and a trace, wraps the
formula under one fresh box (either polarity), normalizes it, and
compares exact truth sets inside the reliable region, where horizon
edge effects cannot leak in.  Ten sample points per trial are
additionally cross-checked against the pointwise witness oracle on
both the original and the normalized formula.

Trials whose reliable region is empty are counted separately: with the
region empty there is nothing to compare, so they are neither passes
nor failures, and passes + failures equals the number of trials that
actually ran.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .evaluate import combined_reliable_region, eval_truth_set
from .intervals import Interval, IntervalSet, from_interval, rat
from .oracle import oracle_eval_many
from .rewrite import Punctual, RewriteMode, SingletonFree, normalize
from .syntax import (
    And,
    Bound,
    BoxMinus,
    BoxPlus,
    DiaMinus,
    DiaPlus,
    Formula,
    Pred,
    Since,
    Top,
    Until,
    print_formula,
)
from .traces import Fact, Trace, format_trace

_MASK = (1 << 64) - 1

# stream tags
_TAG_FORMULA = 1
_TAG_TRACE = 2
_TAG_TRIAL = 3


def _mix(*parts: int) -> int:
    """splitmix64-style combination of integers into one 64-bit seed."""
    h = 0x9E3779B97F4A7C15
    for p in parts:
        h ^= p & _MASK
        h = (h * 0xBF58476D1CE4E5B9) & _MASK
        h ^= h >> 27
        h = (h * 0x94D049BB133111EB) & _MASK
        h ^= h >> 31
    return h


def _stream(seed: int, tag: int, index: int) -> random.Random:
    return random.Random(_mix(seed, tag, index))


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_depth: int = 3
    predicate_pool: tuple[str, ...] = ("p", "q", "r")
    bound_denominator_max: int = 4
    bound_max: Fraction = Fraction(4)
    facts_per_trace: int = 5
    horizon_length: Fraction = Fraction(40)
    trials: int = 100

    def __post_init__(self):
        object.__setattr__(self, "bound_max", rat(self.bound_max))
        object.__setattr__(self, "horizon_length", rat(self.horizon_length))
        object.__setattr__(self, "predicate_pool", tuple(self.predicate_pool))
        if self.max_depth < 0 or self.trials < 0:
            raise ValueError("max_depth and trials must be non-negative")
        if self.bound_denominator_max < 1:
            raise ValueError("bound_denominator_max must be at least 1")
        if self.bound_max <= 0 or self.horizon_length <= 0:
            raise ValueError("bound_max and horizon_length must be positive")
        if not self.predicate_pool:
            raise ValueError("predicate pool must not be empty")


def _any_bound(cfg: GenConfig, rng: random.Random, singleton_free: bool) -> Bound:
    d = rng.randint(1, cfg.bound_denominator_max)
    cap = int(cfg.bound_max * d)
    a, b = sorted((rng.randint(0, cap), rng.randint(0, cap)))
    if singleton_free and a == b:
        if b < cap:
            b += 1
        else:
            a -= 1
    return Bound(Fraction(a, d), Fraction(b, d))


def _mitl_box_bound(cfg: GenConfig, rng: random.Random) -> Bound:
    # lo < hi <= 3*lo, both within (0, bound_max]
    d = rng.randint(1, cfg.bound_denominator_max)
    cap = max(2, int(cfg.bound_max * d))
    n1 = rng.randint(1, cap - 1)
    n2 = rng.randint(n1 + 1, min(3 * n1, cap))
    return Bound(Fraction(n1, d), Fraction(n2, d))


def _box_bound(cfg: GenConfig, rng: random.Random, box_bounds: str, singleton_free: bool) -> Bound:
    if box_bounds == "mitl":
        return _mitl_box_bound(cfg, rng)
    return _any_bound(cfg, rng, singleton_free)


_LEAF_W = [("pred", 0.85), ("top", 0.15)]
_NODE_W = [
    ("pred", 0.15),
    ("top", 0.03),
    ("and", 0.14),
    ("bplus", 0.08),
    ("bminus", 0.08),
    ("dplus", 0.10),
    ("dminus", 0.10),
    ("since", 0.16),
    ("until", 0.16),
]


def _pick(rng: random.Random, table) -> str:
    roll = rng.random() * sum(w for _, w in table)
    for name, w in table:
        roll -= w
        if roll < 0:
            return name
    return table[-1][0]


def gen_formula(
    cfg: GenConfig,
    stream_index: int,
    *,
    box_bounds: str = "any",
    singleton_free: bool = False,
) -> Formula:
    """Deterministic negation-free random formula, nesting <= max_depth.

    box_bounds="mitl" constrains every box bound to lo < hi <= 3*lo so
    the singleton-free rewrite applies throughout; singleton_free=True
    additionally keeps every bound non-degenerate.
    """
    rng = _stream(cfg.seed, _TAG_FORMULA, stream_index)

    def go(budget: int) -> Formula:
        kind = _pick(rng, _LEAF_W if budget == 0 else _NODE_W)
        if kind == "pred":
            return Pred(rng.choice(cfg.predicate_pool))
        if kind == "top":
            return Top()
        if kind == "and":
            return And(go(budget - 1), go(budget - 1))
        if kind in ("bplus", "bminus"):
            bound = _box_bound(cfg, rng, box_bounds, singleton_free)
            return (BoxPlus if kind == "bplus" else BoxMinus)(bound, go(budget - 1))
        if kind in ("dplus", "dminus"):
            bound = _any_bound(cfg, rng, singleton_free)
            return (DiaPlus if kind == "dplus" else DiaMinus)(bound, go(budget - 1))
        bound = _any_bound(cfg, rng, singleton_free)
        cls = Since if kind == "since" else Until
        return cls(go(budget - 1), bound, go(budget - 1))

    return go(cfg.max_depth)


def gen_trace(cfg: GenConfig, stream_index: int) -> Trace:
    """Deterministic random trace on the horizon [-L/2, L/2]."""
    rng = _stream(cfg.seed, _TAG_TRACE, stream_index)
    half = cfg.horizon_length / 2
    horizon = Interval(-half, half)
    facts = []
    for _ in range(cfg.facts_per_trace):
        name = rng.choice(cfg.predicate_pool)
        d = rng.randint(1, cfg.bound_denominator_max)
        lo_n = -int(half * d)
        hi_n = int(half * d)
        a = rng.randint(lo_n, hi_n)
        b = rng.randint(a, hi_n)
        facts.append(Fact(name, Interval(Fraction(a, d), Fraction(b, d))))
    return Trace(horizon, tuple(facts))


@dataclass(frozen=True)
class Verdict:
    status: str  # "equal" | "not_equal" | "empty_region"
    region: Optional[Interval] = None
    first_diff: Optional[Interval] = None
    witness: Optional[Fraction] = None


def _point_inside(part: Interval) -> Fraction:
    if part.lo_closed:
        return part.lo
    if part.hi_closed:
        return part.hi
    return (part.lo + part.hi) / 2


def check_equivalence(f1: Formula, f2: Formula, tr: Trace) -> Verdict:
    """Compare exact truth sets inside the shared reliable region.

    The region shrinks the horizon by the larger of the two formulas'
    reaches on each side; an empty region is reported as such rather
    than treated as agreement.
    """
    region = combined_reliable_region(tr, f1, f2)
    if region is None:
        return Verdict(status="empty_region")
    clip = from_interval(region)
    s1 = eval_truth_set(f1, tr).intersect(clip)
    s2 = eval_truth_set(f2, tr).intersect(clip)
    if s1 == s2:
        return Verdict(status="equal", region=region)
    only1 = s1.intersect(s2.complement_within(region))
    only2 = s2.intersect(s1.complement_within(region))
    diff = only1.union(only2)
    first = diff.parts[0]
    return Verdict(
        status="not_equal", region=region, first_diff=first, witness=_point_inside(first)
    )


# Sample points are drawn from a fixed fine lattice.  The denominator
# is a multiple of every denominator the generators produce, so query
# points never force the oracle onto a finer grid than the formula and
# trace already require, and the lattice is fine enough to land inside
# every piece of the piecewise-constant truth sets under comparison.
_SAMPLE_DENOMINATOR = 24


def _sample_points(rng: random.Random, region: Interval, count: int) -> list[Fraction]:
    d = _SAMPLE_DENOMINATOR
    lo_i = math.ceil(region.lo * d)
    hi_i = math.floor(region.hi * d)
    if lo_i > hi_i:
        return [(region.lo + region.hi) / 2] * count
    if hi_i - lo_i + 1 <= count:
        picks = list(range(lo_i, hi_i + 1))
    else:
        picks = rng.sample(range(lo_i, hi_i + 1), count)
    return [Fraction(i, d) for i in picks]


@dataclass(frozen=True)
class TrialFailure:
    trial: int
    kind: str  # "mismatch" | "oracle_mismatch"
    formula: str
    normalized: str
    trace: str
    first_diff: Optional[str] = None
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "kind": self.kind,
            "formula": self.formula,
            "normalized": self.normalized,
            "trace": self.trace,
            "first_diff": self.first_diff,
            "witness": self.witness,
        }


@dataclass
class CampaignReport:
    mode: str
    config: GenConfig
    trials: int = 0
    passes: int = 0
    failures: list[TrialFailure] = field(default_factory=list)
    empty_regions: int = 0
    wall_time_s: float = 0.0

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "config": {
                "seed": self.config.seed,
                "max_depth": self.config.max_depth,
                "predicate_pool": list(self.config.predicate_pool),
                "bound_denominator_max": self.config.bound_denominator_max,
                "bound_max": str(self.config.bound_max),
                "facts_per_trace": self.config.facts_per_trace,
                "horizon_length": str(self.config.horizon_length),
                "trials": self.config.trials,
            },
            "trials": self.trials,
            "passes": self.passes,
            "failures": [f.to_json() for f in self.failures],
            "empty_regions": self.empty_regions,
            "wall_time_s": self.wall_time_s,
        }


def _wrapper_box(cfg: GenConfig, rng: random.Random, mode: RewriteMode, body: Formula) -> Formula:
    future = rng.random() < 0.5
    if isinstance(mode, SingletonFree):
        bound = _mitl_box_bound(cfg, rng)
    else:
        bound = _any_bound(cfg, rng, singleton_free=False)
    return (BoxPlus if future else BoxMinus)(bound, body)


def _random_slack(cfg: GenConfig, rng: random.Random) -> Fraction:
    d = rng.randint(1, cfg.bound_denominator_max)
    cap = max(1, int(cfg.bound_max * d))
    return Fraction(rng.randint(1, cap), d)


ORACLE_POINTS_PER_TRIAL = 10


def run_campaign(cfg: GenConfig, mode: RewriteMode) -> CampaignReport:
    """Generate, wrap, normalize and check cfg.trials formulas.

    In singleton-free mode with unset slacks, each trial draws its own
    kappa and lambda from (0, bound_max].  Exit summary counts trials
    that ran (passes + failures) plus empty-region trials.
    """
    started = time.monotonic()
    mode_name = "punctual" if isinstance(mode, Punctual) else "mitl"
    report = CampaignReport(mode=mode_name, config=cfg)
    box_bounds = "mitl" if isinstance(mode, SingletonFree) else "any"
    for trial in range(cfg.trials):
        rng = _stream(cfg.seed, _TAG_TRIAL, trial)
        inner = gen_formula(cfg, trial, box_bounds=box_bounds)
        tr = gen_trace(cfg, trial)
        wrapped = _wrapper_box(cfg, rng, mode, inner)
        if isinstance(mode, SingletonFree):
            trial_mode: RewriteMode = SingletonFree(
                kappa=mode.kappa if mode.kappa is not None else _random_slack(cfg, rng),
                lam=mode.lam if mode.lam is not None else _random_slack(cfg, rng),
            )
        else:
            trial_mode = mode
        normalized = normalize(wrapped, trial_mode).output
        verdict = check_equivalence(wrapped, normalized, tr)
        if verdict.status == "empty_region":
            report.empty_regions += 1
            continue
        report.trials += 1
        failure: Optional[TrialFailure] = None
        if verdict.status == "not_equal":
            failure = TrialFailure(
                trial=trial,
                kind="mismatch",
                formula=print_formula(wrapped),
                normalized=print_formula(normalized),
                trace=format_trace(tr),
                first_diff=str(verdict.first_diff),
                witness=str(verdict.witness),
            )
        else:
            points = _sample_points(rng, verdict.region, ORACLE_POINTS_PER_TRIAL)
            s1 = eval_truth_set(wrapped, tr)
            s2 = eval_truth_set(normalized, tr)
            o1 = oracle_eval_many(wrapped, tr, points)
            o2 = oracle_eval_many(normalized, tr, points)
            for pt, a, b in zip(points, o1, o2):
                if a != s1.contains_point(pt) or b != s2.contains_point(pt):
                    failure = TrialFailure(
                        trial=trial,
                        kind="oracle_mismatch",
                        formula=print_formula(wrapped),
                        normalized=print_formula(normalized),
                        trace=format_trace(tr),
                        witness=str(pt),
                    )
                    break
        if failure is None:
            report.passes += 1
        else:
            report.failures.append(failure)
    report.wall_time_s = time.monotonic() - started
    return report
