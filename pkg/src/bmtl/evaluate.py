"""Exact truth-set evaluation of formulas over interval traces.

Each clause is a set-algebra image of the dense semantics:

  pred      -> the predicate's coalesced truth base
  true      -> the horizon
  !A        -> horizon minus truth(A)
  A & B     -> intersection
  dminus    -> dilate truth(A) forward by the bound
  dplus     -> dilate truth(A) backward by the bound
  bminus    -> erode truth(A), past-facing window
  bplus     -> erode truth(A), future-facing window
  A1 S A2   -> per maximal part J of truth(A1): witnesses J * truth(A2)
               dilated forward, clipped back to J
  A1 U A2   -> same with the dilation reversed

The since/until clause leans on canonical form: a closed stretch of
time lies inside truth(A1) exactly when its two ends fall in the same
maximal part, so the "A1 holds throughout" condition reduces to
clipping against one part at a time.

Truth sets may extend beyond the horizon (dilation pushes them out);
only the true/negation clauses consult the horizon.  Within the
reliable region, where no window reaches past the ends of the horizon,
the result agrees with evaluation over any extension of the trace.
"""

from __future__ import annotations

from typing import Optional

from .intervals import EMPTY, Interval, IntervalSet, from_interval
from .syntax import (
    And,
    BoxMinus,
    BoxPlus,
    DiaMinus,
    DiaPlus,
    Formula,
    Not,
    Pred,
    Since,
    Top,
    Until,
    temporal_reach,
)
from .traces import Trace


def eval_truth_set(f: Formula, tr: Trace) -> IntervalSet:
    horizon_set = from_interval(tr.horizon)
    memo: dict[Formula, IntervalSet] = {}

    def ev(node: Formula) -> IntervalSet:
        got = memo.get(node)
        if got is not None:
            return got
        if isinstance(node, Pred):
            out = tr.truth_base(node.name)
        elif isinstance(node, Top):
            out = horizon_set
        elif isinstance(node, Not):
            # clip first: dilated subsets may poke beyond the horizon
            inside = ev(node.body).intersect(horizon_set)
            out = inside.complement_within(tr.horizon)
        elif isinstance(node, And):
            out = ev(node.left).intersect(ev(node.right))
        elif isinstance(node, DiaMinus):
            out = ev(node.body).dilate(node.bound.lo, node.bound.hi)
        elif isinstance(node, DiaPlus):
            out = ev(node.body).dilate(-node.bound.hi, -node.bound.lo)
        elif isinstance(node, BoxMinus):
            out = ev(node.body).erode(node.bound.lo, node.bound.hi, "past")
        elif isinstance(node, BoxPlus):
            out = ev(node.body).erode(node.bound.lo, node.bound.hi, "future")
        elif isinstance(node, Since):
            out = _binary_clause(ev(node.left), ev(node.right), node.bound.lo, node.bound.hi)
        elif isinstance(node, Until):
            out = _binary_clause(ev(node.left), ev(node.right), -node.bound.hi, -node.bound.lo)
        else:
            raise TypeError(f"not a formula node: {node!r}")
        memo[node] = out
        return out

    return ev(f)


def _binary_clause(holds: IntervalSet, witness: IntervalSet, shift_lo, shift_hi) -> IntervalSet:
    out = EMPTY
    for part in holds.parts:
        j = from_interval(part)
        inside = j.intersect(witness)
        if inside.parts:
            out = out.union(inside.dilate(shift_lo, shift_hi).intersect(j))
    return out


def reliable_region(f: Formula, tr: Trace) -> Optional[Interval]:
    """Sub-interval of the horizon where no window of f reaches outside.

    None when the combined reach meets or exceeds the horizon's width.
    """
    return combined_reliable_region(tr, f)


def combined_reliable_region(tr: Trace, *formulas: Formula) -> Optional[Interval]:
    past = max(temporal_reach(f)[0] for f in formulas)
    future = max(temporal_reach(f)[1] for f in formulas)
    if past + future >= tr.horizon.width:
        return None
    return Interval(tr.horizon.lo + past, tr.horizon.hi - future)
