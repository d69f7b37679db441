"""Interval-set algebra: frozen examples, lattice-oracle properties, laws."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from bmtl.errors import MemberOutsideUniverseError, NegativeBoundError
from bmtl.intervals import (
    EMPTY,
    Interval,
    IntervalSet,
    coalesce,
    from_interval,
    make_interval,
)
from conftest import fractions_st, intervals_st, interval_sets_st, nonneg_fractions_st
from gridcheck import (
    assert_canonical,
    brute_exists_in_window,
    brute_forall_in_window,
    interval_contains,
    padded_grid,
    window_grid,
    lattice_denominator,
    set_endpoints,
)
from hypothesis import strategies as st


def iset(*parts: Interval) -> IntervalSet:
    return coalesce(parts)


# ---------------------------------------------------------------- frozen


class TestFrozenValues:
    def test_dilate_past_window(self):
        s = iset(Interval(F(0), F(4)))
        assert s.dilate(F(1), F(2)) == iset(Interval(F(1), F(6)))

    def test_dilate_future_window(self):
        s = iset(Interval(F(0), F(4)))
        assert s.dilate(F(-2), F(-1)) == iset(Interval(F(-2), F(3)))

    def test_erode_past(self):
        s = iset(Interval(F(0), F(4)))
        assert s.erode(F(1), F(2), "past") == iset(Interval(F(2), F(5)))

    def test_erode_future(self):
        s = iset(Interval(F(0), F(4)))
        assert s.erode(F(1), F(2), "future") == iset(Interval(F(-1), F(2)))

    def test_complement_flips_closedness(self):
        s = iset(Interval(F(0), F(1)), Interval(F(2), F(3)))
        got = s.complement_within(Interval(F(-1), F(4)))
        assert got == IntervalSet(
            (
                Interval(F(-1), F(0), True, False),
                Interval(F(1), F(2), False, False),
                Interval(F(3), F(4), False, True),
            )
        )

    def test_coalesce_merges_shared_covered_point(self):
        got = coalesce(
            [Interval(F(0), F(1), True, True), Interval(F(1), F(2), False, True)]
        )
        assert got == iset(Interval(F(0), F(2)))

    def test_coalesce_keeps_uncovered_gap(self):
        got = coalesce(
            [Interval(F(0), F(1), True, False), Interval(F(1), F(2), False, True)]
        )
        assert len(got.parts) == 2


# ------------------------------------------------------------ construction


class TestConstruction:
    def test_inverted_endpoints_rejected(self):
        with pytest.raises(ValueError):
            Interval(F(2), F(1))

    def test_open_singleton_rejected(self):
        with pytest.raises(ValueError):
            Interval(F(1), F(1), True, False)

    def test_make_interval_collapses_empty(self):
        assert make_interval(F(2), F(1)) is None
        assert make_interval(F(1), F(1), True, False) is None
        assert make_interval(F(1), F(1)) == Interval(F(1), F(1))

    def test_noncanonical_parts_rejected(self):
        with pytest.raises(ValueError):
            IntervalSet((Interval(F(0), F(2)), Interval(F(1), F(3))))
        with pytest.raises(ValueError):
            IntervalSet((Interval(F(0), F(1)), Interval(F(1), F(2))))

    def test_erode_negative_bound_rejected(self):
        with pytest.raises(NegativeBoundError):
            from_interval(Interval(F(0), F(4))).erode(F(-1), F(1), "past")

    def test_complement_outside_universe_rejected(self):
        with pytest.raises(MemberOutsideUniverseError):
            from_interval(Interval(F(0), F(4))).complement_within(Interval(F(1), F(2)))


# -------------------------------------------------- lattice-oracle properties

ALGEBRA_EXAMPLES = settings(max_examples=220)


class TestAgainstLatticeOracle:
    @ALGEBRA_EXAMPLES
    @given(interval_sets_st(), interval_sets_st())
    def test_intersect(self, s1, s2):
        got = s1.intersect(s2)
        assert_canonical(got)
        pts = padded_grid([s1, s2, got], [], F(1))
        for x in pts:
            assert got.contains_point(x) == (s1.contains_point(x) and s2.contains_point(x))

    @ALGEBRA_EXAMPLES
    @given(interval_sets_st(), interval_sets_st())
    def test_union(self, s1, s2):
        got = s1.union(s2)
        assert_canonical(got)
        pts = padded_grid([s1, s2, got], [], F(1))
        for x in pts:
            assert got.contains_point(x) == (s1.contains_point(x) or s2.contains_point(x))

    @ALGEBRA_EXAMPLES
    @given(interval_sets_st(), fractions_st(lo=-20, hi=20), fractions_st(lo=-20, hi=20))
    def test_complement_within(self, s, a, b):
        lo, hi = min(a, b), max(a, b)
        if lo == hi:
            hi = lo + 1
        universe = Interval(lo, hi)
        clipped = s.intersect(from_interval(universe))
        got = clipped.complement_within(universe)
        assert_canonical(got)
        pts = padded_grid([clipped, got], [lo, hi], F(1))
        for x in pts:
            want = universe.contains(x) and not clipped.contains_point(x)
            assert got.contains_point(x) == want

    @ALGEBRA_EXAMPLES
    @given(interval_sets_st(), nonneg_fractions_st(), nonneg_fractions_st())
    def test_dilate_matches_window_existential(self, s, a, b):
        lo, hi = min(a, b), max(a, b)
        got = s.dilate(lo, hi)
        assert_canonical(got)
        denom = lattice_denominator(set_endpoints(s), [lo, hi])
        pts = padded_grid([s, got], [], hi + 1)
        for x in pts:
            want = brute_exists_in_window(s, window_grid(x, -hi, -lo, denom))
            assert got.contains_point(x) == want

    @ALGEBRA_EXAMPLES
    @given(interval_sets_st(), nonneg_fractions_st(), nonneg_fractions_st())
    def test_erode_past_matches_window_universal(self, s, a, b):
        lo, hi = min(a, b), max(a, b)
        got = s.erode(lo, hi, "past")
        assert_canonical(got)
        denom = lattice_denominator(set_endpoints(s), [lo, hi])
        pts = padded_grid([s, got], [], hi + 1)
        for x in pts:
            want = brute_forall_in_window(s, window_grid(x, -hi, -lo, denom))
            assert got.contains_point(x) == want

    @ALGEBRA_EXAMPLES
    @given(interval_sets_st(), nonneg_fractions_st(), nonneg_fractions_st())
    def test_erode_future_matches_window_universal(self, s, a, b):
        lo, hi = min(a, b), max(a, b)
        got = s.erode(lo, hi, "future")
        assert_canonical(got)
        denom = lattice_denominator(set_endpoints(s), [lo, hi])
        pts = padded_grid([s, got], [], hi + 1)
        for x in pts:
            want = brute_forall_in_window(s, window_grid(x, lo, hi, denom))
            assert got.contains_point(x) == want

    @ALGEBRA_EXAMPLES
    @given(st.lists(intervals_st(), max_size=6))
    def test_coalesce_preserves_pointwise_membership(self, raw):
        got = coalesce(raw)
        assert_canonical(got)
        pts = padded_grid([got] + [from_interval(p) for p in raw], [], F(1))
        for x in pts:
            want = any(interval_contains(p, x) for p in raw)
            assert got.contains_point(x) == want


# ------------------------------------------------------------ algebraic laws


class TestLaws:
    @given(interval_sets_st(), fractions_st(lo=-20, hi=20), fractions_st(lo=-20, hi=20))
    def test_complement_is_involutive(self, s, a, b):
        lo, hi = min(a, b), max(a, b)
        if lo == hi:
            hi = lo + 1
        universe = Interval(lo, hi)
        clipped = s.intersect(from_interval(universe))
        assert clipped.complement_within(universe).complement_within(universe) == clipped

    @given(interval_sets_st(), interval_sets_st(), interval_sets_st())
    def test_intersect_distributes_over_union(self, a, b, c):
        assert a.intersect(b.union(c)) == a.intersect(b).union(a.intersect(c))

    @given(interval_sets_st(), nonneg_fractions_st(), nonneg_fractions_st())
    def test_dilate_then_erode_future_is_expansive(self, s, a, b):
        # each part maps to [a+lo, b+hi] and back to exactly [a, b]
        lo, hi = min(a, b), max(a, b)
        grown = s.dilate(lo, hi)
        assert s.is_subset_of(grown.erode(lo, hi, "future"))

    @given(interval_sets_st())
    def test_empty_interactions(self, s):
        assert s.intersect(EMPTY) == EMPTY
        assert s.union(EMPTY) == s
        assert EMPTY.dilate(F(0), F(5)) == EMPTY

    @given(intervals_st())
    def test_contains_point_respects_endpoint_closure(self, p):
        s = from_interval(p)
        assert s.contains_point(p.lo) == p.lo_closed
        assert s.contains_point(p.hi) == p.hi_closed
        if p.lo < p.hi:
            assert s.contains_point((p.lo + p.hi) / 2)

    @given(interval_sets_st(), nonneg_fractions_st(), nonneg_fractions_st())
    def test_erode_of_wide_window_empties_narrow_parts(self, s, a, b):
        lo, hi = min(a, b), max(a, b)
        eroded = s.erode(lo, hi, "future")
        for part in eroded.parts:
            assert any(
                orig.lo <= part.lo + lo and part.hi + hi <= orig.hi for orig in s.parts
            )
