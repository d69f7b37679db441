"""Exact interval-set algebra over rational time.

Sets of time points are kept in a canonical form: a sorted tuple of
pairwise disjoint, non-adjacent intervals with per-endpoint open/closed
flags.  Canonical form is unique, so structural equality coincides with
point-set equality.  All arithmetic is exact (``fractions.Fraction``);
floats never enter the core.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .errors import MemberOutsideUniverseError, NegativeBoundError

RationalLike = Union[Fraction, int]


def rat(x: RationalLike) -> Fraction:
    """Coerce an int to Fraction; Fractions pass through unchanged."""
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Interval:
    """A nonempty rational interval with open/closed endpoint flags.

    Requires ``lo < hi``, or ``lo == hi`` with both endpoints closed
    (a singleton).  The empty interval is unrepresentable.
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted interval endpoints: {self.lo} > {self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("singleton interval requires both endpoints closed")

    def contains(self, t: RationalLike) -> bool:
        t = rat(t)
        above = self.lo < t or (self.lo_closed and self.lo == t)
        below = t < self.hi or (self.hi_closed and t == self.hi)
        return above and below

    def contains_interval(self, other: "Interval") -> bool:
        lo_ok = self.lo < other.lo or (
            self.lo == other.lo and (self.lo_closed or not other.lo_closed)
        )
        hi_ok = other.hi < self.hi or (
            other.hi == self.hi and (self.hi_closed or not other.hi_closed)
        )
        return lo_ok and hi_ok

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        if self.lo > other.lo or (self.lo == other.lo and not self.lo_closed):
            lo, lc = self.lo, self.lo_closed
        elif self.lo == other.lo:
            lo, lc = self.lo, self.lo_closed and other.lo_closed
        else:
            lo, lc = other.lo, other.lo_closed
        if self.hi < other.hi or (self.hi == other.hi and not self.hi_closed):
            hi, hc = self.hi, self.hi_closed
        elif self.hi == other.hi:
            hi, hc = self.hi, self.hi_closed and other.hi_closed
        else:
            hi, hc = other.hi, other.hi_closed
        return make_interval(lo, hi, lc, hc)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self) -> str:
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{self.lo},{self.hi}{rb}"


def make_interval(
    lo: RationalLike, hi: RationalLike, lo_closed: bool = True, hi_closed: bool = True
) -> Optional[Interval]:
    """Build an interval, collapsing empty results to None."""
    lo, hi = rat(lo), rat(hi)
    if lo > hi:
        return None
    if lo == hi and not (lo_closed and hi_closed):
        return None
    return Interval(lo, hi, lo_closed, hi_closed)


def _starts_before(a: Interval, b: Interval) -> bool:
    """Order on lower endpoints; a closed start precedes an open one."""
    if a.lo != b.lo:
        return a.lo < b.lo
    return a.lo_closed and not b.lo_closed


def _mergeable(cur: Interval, nxt: Interval) -> bool:
    # Assumes cur starts no later than nxt.  The two fuse into one
    # interval iff they overlap, or abut with the shared point covered.
    if nxt.lo < cur.hi:
        return True
    if nxt.lo == cur.hi and (cur.hi_closed or nxt.lo_closed):
        return True
    return False


def _merge(cur: Interval, nxt: Interval) -> Interval:
    if cur.lo == nxt.lo:
        lc = cur.lo_closed or nxt.lo_closed
    else:
        lc = cur.lo_closed
    if nxt.hi > cur.hi:
        hi, hc = nxt.hi, nxt.hi_closed
    elif nxt.hi == cur.hi:
        hi, hc = cur.hi, cur.hi_closed or nxt.hi_closed
    else:
        hi, hc = cur.hi, cur.hi_closed
    return Interval(cur.lo, hi, lc, hc)


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite union of intervals.

    Construct via :func:`coalesce` (or the operations below) unless the
    parts are already canonical; the constructor checks and rejects
    non-canonical input.
    """

    parts: tuple[Interval, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.parts, self.parts[1:]):
            if not _starts_before(a, b) or _mergeable(a, b):
                raise ValueError("parts not in canonical form")

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return coalesce(self.parts + other.parts)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out: list[Interval] = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            piece = a[i].intersect(b[j])
            if piece is not None:
                out.append(piece)
            # advance the side that ends first; on a tie advance both
            ahi, bhi = a[i], b[j]
            if ahi.hi < bhi.hi or (ahi.hi == bhi.hi and not ahi.hi_closed and bhi.hi_closed):
                i += 1
            elif bhi.hi < ahi.hi or (ahi.hi == bhi.hi and not bhi.hi_closed and ahi.hi_closed):
                j += 1
            else:
                i += 1
                j += 1
        return IntervalSet(tuple(out))

    def complement_within(self, universe: Interval) -> "IntervalSet":
        """Points of ``universe`` not in this set; closedness flips at
        every internal boundary."""
        for p in self.parts:
            if not universe.contains_interval(p):
                raise MemberOutsideUniverseError(
                    f"member {p} not contained in universe {universe}"
                )
        out: list[Interval] = []
        cursor, inclusive = universe.lo, universe.lo_closed
        for p in self.parts:
            gap = make_interval(cursor, p.lo, inclusive, not p.lo_closed)
            if gap is not None:
                out.append(gap)
            cursor, inclusive = p.hi, not p.hi_closed
        tail = make_interval(cursor, universe.hi, inclusive, universe.hi_closed)
        if tail is not None:
            out.append(tail)
        return IntervalSet(tuple(out))

    def dilate(self, shift_lo: RationalLike, shift_hi: RationalLike) -> "IntervalSet":
        """Minkowski sum with the closed shift interval [shift_lo, shift_hi].

        Shifts may be negative; endpoint closedness follows the source.
        """
        shift_lo, shift_hi = rat(shift_lo), rat(shift_hi)
        if shift_lo > shift_hi:
            raise ValueError("inverted shift interval")
        return coalesce(
            Interval(p.lo + shift_lo, p.hi + shift_hi, p.lo_closed, p.hi_closed)
            for p in self.parts
        )

    def erode(self, lo: RationalLike, hi: RationalLike, direction: str) -> "IntervalSet":
        """Points whose whole displaced window lies in the set.

        direction "past": keep t with [t - hi, t - lo] fully inside;
        direction "future": keep t with [t + lo, t + hi] fully inside.
        Because the set is canonical, a closed window fits iff it fits
        inside one single part, so each part shrinks independently.
        """
        lo, hi = rat(lo), rat(hi)
        if lo < 0:
            raise NegativeBoundError("erosion window must not reach negative offsets")
        if lo > hi:
            raise ValueError("inverted erosion window")
        out: list[Interval] = []
        for p in self.parts:
            if direction == "past":
                piece = make_interval(p.lo + hi, p.hi + lo, p.lo_closed, p.hi_closed)
            elif direction == "future":
                piece = make_interval(p.lo - lo, p.hi - hi, p.lo_closed, p.hi_closed)
            else:
                raise ValueError(f"unknown erosion direction: {direction!r}")
            if piece is not None:
                out.append(piece)
        return coalesce(out)

    def is_subset_of(self, other: "IntervalSet") -> bool:
        return self.intersect(other) == self

    def contains_point(self, t: RationalLike) -> bool:
        t = rat(t)
        return any(p.contains(t) for p in self.parts)

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.parts) + "}"


EMPTY = IntervalSet()


def coalesce(raw: Iterable[Optional[Interval]]) -> IntervalSet:
    """Canonicalize a raw collection of intervals (Nones are dropped)."""
    pieces = sorted(
        (p for p in raw if p is not None),
        key=lambda p: (p.lo, not p.lo_closed),
    )
    out: list[Interval] = []
    for p in pieces:
        if out and _mergeable(out[-1], p):
            out[-1] = _merge(out[-1], p)
        else:
            out.append(p)
    return IntervalSet(tuple(out))


def from_interval(p: Interval) -> IntervalSet:
    return IntervalSet((p,))
