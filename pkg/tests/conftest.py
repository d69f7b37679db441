"""Shared strategies and fixtures.

Hypothesis runs derandomized so the suite is reproducible; property
counts are chosen per test, with the interval-algebra properties at 200
or more examples each.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from bmtl.intervals import Interval, IntervalSet, coalesce
from bmtl.syntax import (
    And,
    Bound,
    BoxMinus,
    BoxPlus,
    DiaMinus,
    DiaPlus,
    Not,
    Pred,
    Since,
    Top,
    Until,
)
from bmtl.traces import Fact, Trace

settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_DENOMS = (1, 2, 3, 4, 8)


def fractions_st(lo: int = -10, hi: int = 10, denoms=_DENOMS):
    return st.builds(
        Fraction,
        st.integers(min_value=lo, max_value=hi),
        st.sampled_from(denoms),
    )


def nonneg_fractions_st(hi: int = 8, denoms=_DENOMS):
    return st.builds(
        Fraction,
        st.integers(min_value=0, max_value=hi),
        st.sampled_from(denoms),
    )


@st.composite
def intervals_st(draw):
    a = draw(fractions_st())
    b = draw(fractions_st())
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return Interval(lo, hi, True, True)
    return Interval(lo, hi, draw(st.booleans()), draw(st.booleans()))


def interval_sets_st(max_parts: int = 5):
    return st.lists(intervals_st(), min_size=0, max_size=max_parts).map(coalesce)


@st.composite
def bounds_st(draw, singleton_free: bool = False):
    a = draw(nonneg_fractions_st())
    b = draw(nonneg_fractions_st())
    lo, hi = min(a, b), max(a, b)
    if singleton_free and lo == hi:
        hi = lo + Fraction(1, 2)
    return Bound(lo, hi)


@st.composite
def mitl_box_bounds_st(draw):
    """Bounds with 0 < lo < hi <= 3*lo (hi/lo drawn from (1, 3])."""
    lo = draw(
        st.builds(Fraction, st.integers(min_value=1, max_value=8), st.sampled_from(_DENOMS))
    )
    ratio = Fraction(draw(st.integers(min_value=9, max_value=24)), 8)
    return Bound(lo, lo * ratio)


_PREDS = ("p", "q", "r")


def formulas_st(max_depth: int = 3, allow_not: bool = False, singleton_free: bool = False):
    leaves = st.one_of(
        st.builds(Pred, st.sampled_from(_PREDS)),
        st.just(Top()),
    )

    def extend(children):
        bound = bounds_st(singleton_free=singleton_free)
        options = [
            st.builds(And, children, children),
            st.builds(BoxPlus, bound, children),
            st.builds(BoxMinus, bound, children),
            st.builds(DiaPlus, bound, children),
            st.builds(DiaMinus, bound, children),
            st.builds(Since, children, bound, children),
            st.builds(Until, children, bound, children),
        ]
        if allow_not:
            options.append(st.builds(Not, children))
        return st.one_of(options)

    return st.recursive(leaves, extend, max_leaves=2**max_depth)


@st.composite
def traces_st(draw, max_facts: int = 5, horizon_max: int = 12):
    a = draw(st.integers(min_value=-horizon_max, max_value=0))
    b = draw(st.integers(min_value=1, max_value=horizon_max))
    horizon = Interval(Fraction(a), Fraction(b))
    n = draw(st.integers(min_value=0, max_value=max_facts))
    facts = []
    for _ in range(n):
        name = draw(st.sampled_from(_PREDS))
        x = draw(fractions_st(lo=4 * a, hi=4 * b, denoms=(1, 2, 4)))
        y = draw(fractions_st(lo=4 * a, hi=4 * b, denoms=(1, 2, 4)))
        lo, hi = min(x, y), max(x, y)
        lo = max(lo, horizon.lo)
        hi = min(hi, horizon.hi)
        if lo > hi:
            lo = hi = horizon.lo
        facts.append(Fact(name, Interval(lo, hi)))
    return Trace(horizon, tuple(facts))


@pytest.fixture
def simple_trace() -> Trace:
    return Trace(
        Interval(Fraction(-5), Fraction(15)),
        (
            Fact("p", Interval(Fraction(0), Fraction(4))),
            Fact("q", Interval(Fraction(3), Fraction(6))),
        ),
    )
