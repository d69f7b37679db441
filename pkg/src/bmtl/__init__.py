"""Bounded metric temporal logic over dense rational time.

Parsing, exact interval-set evaluation, elimination of box and diamond
operators in favor of since/until, and randomized equivalence campaigns
that check the rewriting against an independent pointwise oracle.
"""

from .errors import (
    BmtlError,
    DegenerateBoundError,
    FactOutsideHorizonError,
    InvertedBoundError,
    MemberOutsideUniverseError,
    MissingHorizonError,
    MitlPreconditionError,
    NegativeBoundError,
    NonpositiveSlackError,
    NotApplicableError,
    ParseError,
    PointOutsideHorizonError,
    RewriteError,
)
from .evaluate import combined_reliable_region, eval_truth_set, reliable_region
from .harness import (
    CampaignReport,
    GenConfig,
    TrialFailure,
    Verdict,
    check_equivalence,
    gen_formula,
    gen_trace,
    run_campaign,
)
from .intervals import EMPTY, Interval, IntervalSet, coalesce, from_interval, make_interval, rat
from .oracle import oracle_eval_at, oracle_eval_many
from .parser import parse_formula
from .rewrite import (
    Punctual,
    RewriteMode,
    RewriteReport,
    RuleApplication,
    SingletonFree,
    apply_rule_at,
    normalize,
    rewrite_box_punctual,
    rewrite_box_singleton_free,
    rewrite_diamond,
)
from .syntax import (
    And,
    Bound,
    BoxMinus,
    BoxPlus,
    Census,
    DiaMinus,
    DiaPlus,
    Formula,
    Not,
    Pred,
    Since,
    Top,
    Until,
    all_bounds,
    census,
    children,
    is_negation_free,
    print_formula,
    s_expression,
    temporal_nesting,
    temporal_reach,
)
from .traces import Fact, Trace, format_trace, parse_trace

__version__ = "0.1.0"
