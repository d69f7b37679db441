"""Formula AST for bounded metric temporal logic, plus printer and analyses.

Temporal operators carry a closed, non-negative, ordered bound [lo, hi]
measuring distance from the evaluation point:

  dplus  -- somewhere within [t+lo, t+hi]
  dminus -- somewhere within [t-hi, t-lo]
  bplus  -- everywhere within [t+lo, t+hi]
  bminus -- everywhere within [t-hi, t-lo]
  U / S  -- until / since with the witness constrained to the window

All nodes are frozen dataclasses, so structural equality and hashing
come for free and subtrees can be shared safely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvertedBoundError, NegativeBoundError
from .intervals import RationalLike, rat


@dataclass(frozen=True)
class Bound:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if self.lo < 0:
            raise NegativeBoundError(f"bound lower endpoint {self.lo} is negative")
        if self.hi < self.lo:
            raise InvertedBoundError(f"bound [{self.lo},{self.hi}] is inverted")

    @property
    def singleton(self) -> bool:
        return self.lo == self.hi

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


class Formula:
    """Base class; concrete nodes are the dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class Pred(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class BoxPlus(Formula):
    bound: Bound
    body: Formula


@dataclass(frozen=True)
class BoxMinus(Formula):
    bound: Bound
    body: Formula


@dataclass(frozen=True)
class DiaPlus(Formula):
    bound: Bound
    body: Formula


@dataclass(frozen=True)
class DiaMinus(Formula):
    bound: Bound
    body: Formula


@dataclass(frozen=True)
class Since(Formula):
    left: Formula
    bound: Bound
    right: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    bound: Bound
    right: Formula


_UNARY_KEYWORD = {BoxPlus: "bplus", BoxMinus: "bminus", DiaPlus: "dplus", DiaMinus: "dminus"}
_KIND_NAME = {
    Pred: "pred",
    Top: "top",
    Not: "not",
    And: "and",
    BoxPlus: "bplus",
    BoxMinus: "bminus",
    DiaPlus: "dplus",
    DiaMinus: "dminus",
    Since: "since",
    Until: "until",
}


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Pred, Top)):
        return ()
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (BoxPlus, BoxMinus, DiaPlus, DiaMinus)):
        return (f.body,)
    if isinstance(f, And):
        return (f.left, f.right)
    if isinstance(f, (Since, Until)):
        return (f.left, f.right)
    raise TypeError(f"not a formula node: {f!r}")


def replace_children(f: Formula, new: tuple[Formula, ...]) -> Formula:
    if isinstance(f, (Pred, Top)):
        return f
    if isinstance(f, Not):
        return Not(new[0])
    if isinstance(f, (BoxPlus, BoxMinus, DiaPlus, DiaMinus)):
        return type(f)(f.bound, new[0])
    if isinstance(f, And):
        return And(new[0], new[1])
    if isinstance(f, (Since, Until)):
        return type(f)(new[0], f.bound, new[1])
    raise TypeError(f"not a formula node: {f!r}")


def print_formula(f: Formula) -> str:
    """Concrete syntax; re-parsing the output reproduces the tree.

    Conjunctions and since/until nodes are always parenthesized, which
    keeps the printer unambiguous without precedence bookkeeping.
    """
    if isinstance(f, Pred):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Not):
        return "!" + print_formula(f.body)
    if isinstance(f, And):
        return f"({print_formula(f.left)} & {print_formula(f.right)})"
    if isinstance(f, (BoxPlus, BoxMinus, DiaPlus, DiaMinus)):
        return f"{_UNARY_KEYWORD[type(f)]}{f.bound} {print_formula(f.body)}"
    if isinstance(f, Since):
        return f"({print_formula(f.left)} S{f.bound} {print_formula(f.right)})"
    if isinstance(f, Until):
        return f"({print_formula(f.left)} U{f.bound} {print_formula(f.right)})"
    raise TypeError(f"not a formula node: {f!r}")


def s_expression(f: Formula) -> str:
    """Prefix rendering of the AST, one parenthesized node per operator."""
    if isinstance(f, Pred):
        return f"(pred {f.name})"
    if isinstance(f, Top):
        return "(top)"
    if isinstance(f, Not):
        return f"(not {s_expression(f.body)})"
    if isinstance(f, And):
        return f"(and {s_expression(f.left)} {s_expression(f.right)})"
    if isinstance(f, (BoxPlus, BoxMinus, DiaPlus, DiaMinus)):
        return f"({_UNARY_KEYWORD[type(f)]} {f.bound} {s_expression(f.body)})"
    if isinstance(f, Since):
        return f"(since {s_expression(f.left)} {f.bound} {s_expression(f.right)})"
    if isinstance(f, Until):
        return f"(until {s_expression(f.left)} {f.bound} {s_expression(f.right)})"
    raise TypeError(f"not a formula node: {f!r}")


@dataclass(frozen=True, eq=True)
class Census:
    counts: dict[str, int]
    has_singleton_bound: bool = False
    max_depth: int = 0

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    def operators(self) -> set[str]:
        return {k for k, v in self.counts.items() if v > 0}


def census(f: Formula) -> Census:
    """Count node kinds, flag singleton bounds, measure nesting depth.

    Depth counts edges: a lone predicate has depth 0.
    """
    counts: dict[str, int] = {}
    singleton = False
    max_depth = 0

    def walk(node: Formula, depth: int):
        nonlocal singleton, max_depth
        max_depth = max(max_depth, depth)
        name = _KIND_NAME[type(node)]
        counts[name] = counts.get(name, 0) + 1
        bound = getattr(node, "bound", None)
        if bound is not None and bound.singleton:
            singleton = True
        for c in children(node):
            walk(c, depth + 1)

    walk(f, 0)
    return Census(counts=counts, has_singleton_bound=singleton, max_depth=max_depth)


def is_negation_free(f: Formula) -> bool:
    if isinstance(f, Not):
        return False
    return all(is_negation_free(c) for c in children(f))


def temporal_reach(f: Formula) -> tuple[Fraction, Fraction]:
    """Over-approximate (past, future) dependence radius of a formula.

    Truth at t is determined by trace content within
    [t - past, t + future]; the envelope grows by the bound's upper
    endpoint on the side the operator looks toward.
    """
    zero = Fraction(0)
    if isinstance(f, (Pred, Top)):
        return (zero, zero)
    if isinstance(f, Not):
        return temporal_reach(f.body)
    if isinstance(f, And):
        (p1, f1), (p2, f2) = temporal_reach(f.left), temporal_reach(f.right)
        return (max(p1, p2), max(f1, f2))
    if isinstance(f, (DiaMinus, BoxMinus)):
        p, fut = temporal_reach(f.body)
        return (f.bound.hi + p, fut)
    if isinstance(f, (DiaPlus, BoxPlus)):
        p, fut = temporal_reach(f.body)
        return (p, f.bound.hi + fut)
    if isinstance(f, Since):
        (p1, f1), (p2, f2) = temporal_reach(f.left), temporal_reach(f.right)
        return (f.bound.hi + max(p1, p2), max(f1, f2))
    if isinstance(f, Until):
        (p1, f1), (p2, f2) = temporal_reach(f.left), temporal_reach(f.right)
        return (max(p1, p2), f.bound.hi + max(f1, f2))
    raise TypeError(f"not a formula node: {f!r}")


def temporal_nesting(f: Formula) -> int:
    """Maximum number of temporal operators on any root-to-leaf path."""
    step = 1 if isinstance(f, (BoxPlus, BoxMinus, DiaPlus, DiaMinus, Since, Until)) else 0
    kids = children(f)
    return step + (max((temporal_nesting(c) for c in kids), default=0))


def all_bounds(f: Formula) -> list[Bound]:
    """Every temporal bound in the tree, in preorder."""
    out: list[Bound] = []

    def walk(node: Formula):
        bound = getattr(node, "bound", None)
        if bound is not None:
            out.append(bound)
        for c in children(node):
            walk(c)

    walk(f)
    return out
