"""Directed rewriting of box and diamond operators into the since/until core.

Two modes:

  Punctual      -- boxes become a diamond pinned at the window's start
                   whose body must keep holding for the window's width;
                   the resulting bounds are singletons.
  SingletonFree -- boxes become a conjunction of two diamonds with
                   positive-width bounds, one anchored near each end of
                   the window, overlapping in the middle.  Requires a
                   non-degenerate bound (lo < hi) with 3*lo >= hi, and
                   positive slack parameters kappa and lambda.

Diamonds themselves reduce to since/until with a true witness.  After
normalize, a negation-free formula uses only predicates, true,
conjunction, since and until.

Rule identifiers (used in reports and by replay):

  R-DIA-F   dplus[l,h] A   ->  (true U[l,h] A)
  R-DIA-P   dminus[l,h] A  ->  (true S[l,h] A)
  R-BOXF-P  bplus[l,h] A   ->  dplus[l,l] (A U[h-l,h-l] true)
  R-BOXP-P  bminus[l,h] A  ->  dminus[l,l] (A S[h-l,h-l] true)
  R-BOXF-M  bplus[l,h] A   ->  dplus[(3l-h)/2,l] (A U[h-l,h-l+kappa] true)
                               & dplus[h,(3h-l)/2] (A S[h-l,h-l+lambda] true)
  R-BOXP-M  bminus[l,h] A  ->  dminus[(3l-h)/2,l] (A S[h-l,h-l+lambda] true)
                               & dminus[h,(3h-l)/2] (A U[h-l,h-l+kappa] true)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DegenerateBoundError,
    MitlPreconditionError,
    NonpositiveSlackError,
    NotApplicableError,
)
from .intervals import rat
from .syntax import (
    And,
    Bound,
    BoxMinus,
    BoxPlus,
    DiaMinus,
    DiaPlus,
    Formula,
    Not,
    Since,
    Top,
    Until,
    children,
    replace_children,
)

# Test-only corruption switch: R-BOXF-P pins the diamond at the window's
# end instead of its start, which is unsound whenever lo < hi.  Used to
# prove the campaign harness actually detects broken rewrites.
_corrupt_punctual_box = False


@dataclass(frozen=True)
class Punctual:
    pass


@dataclass(frozen=True)
class SingletonFree:
    """Slack parameters; None means (hi - lo) / 2, resolved per box."""

    kappa: Optional[Fraction] = None
    lam: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("kappa", "lam"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, rat(v))
                if getattr(self, name) <= 0:
                    raise NonpositiveSlackError(f"{name} must be positive, got {v}")


RewriteMode = Union[Punctual, SingletonFree]


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    path: tuple[int, ...]
    kappa: Optional[Fraction] = None
    lam: Optional[Fraction] = None


@dataclass(frozen=True)
class RewriteReport:
    input: Formula
    output: Formula
    applied: tuple[RuleApplication, ...]


def rewrite_diamond(f: Formula) -> Formula:
    """Eliminate a root diamond in favor of since/until with a true witness."""
    if isinstance(f, DiaPlus):
        return Until(Top(), f.bound, f.body)
    if isinstance(f, DiaMinus):
        return Since(Top(), f.bound, f.body)
    raise NotApplicableError(f"no diamond at the root of {type(f).__name__}")


def rewrite_box_punctual(f: Formula) -> Formula:
    """Eliminate a root box using singleton bounds.

    The window [t+lo, t+hi] is covered by requiring, at the single point
    t+lo, that the body then persists for hi-lo time units (witnessed by
    an until/since whose bound is the singleton [hi-lo, hi-lo]).
    """
    if not isinstance(f, (BoxPlus, BoxMinus)):
        raise NotApplicableError(f"no box at the root of {type(f).__name__}")
    lo, hi = f.bound.lo, f.bound.hi
    width = Bound(hi - lo, hi - lo)
    pin = Bound(hi, hi) if (_corrupt_punctual_box and isinstance(f, BoxPlus)) else Bound(lo, lo)
    if isinstance(f, BoxPlus):
        return DiaPlus(pin, Until(f.body, width, Top()))
    return DiaMinus(Bound(lo, lo), Since(f.body, width, Top()))


def rewrite_box_singleton_free(f: Formula, kappa, lam) -> Formula:
    """Eliminate a root box without introducing singleton bounds.

    Two overlapping persistence requirements, one anchored in
    [t + (3lo-hi)/2, t+lo] and one in [t+hi, t + (3hi-lo)/2], jointly
    cover [t+lo, t+hi].  Needs lo < hi, 3*lo >= hi, kappa > 0, lam > 0.
    """
    if not isinstance(f, (BoxPlus, BoxMinus)):
        raise NotApplicableError(f"no box at the root of {type(f).__name__}")
    kappa, lam = rat(kappa), rat(lam)
    lo, hi = f.bound.lo, f.bound.hi
    if lo == hi:
        raise DegenerateBoundError(f"bound {f.bound} is a singleton")
    if 3 * lo < hi:
        raise MitlPreconditionError(f"bound {f.bound} violates 3*lo >= hi")
    if kappa <= 0:
        raise NonpositiveSlackError(f"kappa must be positive, got {kappa}")
    if lam <= 0:
        raise NonpositiveSlackError(f"lambda must be positive, got {lam}")
    width = hi - lo
    near = Bound((3 * lo - hi) / 2, lo)
    far = Bound(hi, (3 * hi - lo) / 2)
    fwd = Bound(width, width + kappa)
    bwd = Bound(width, width + lam)
    if isinstance(f, BoxPlus):
        return And(
            DiaPlus(near, Until(f.body, fwd, Top())),
            DiaPlus(far, Since(f.body, bwd, Top())),
        )
    return And(
        DiaMinus(near, Since(f.body, bwd, Top())),
        DiaMinus(far, Until(f.body, fwd, Top())),
    )


def _resolve_slack(mode: SingletonFree, bound: Bound) -> tuple[Fraction, Fraction]:
    default = (bound.hi - bound.lo) / 2
    kappa = mode.kappa if mode.kappa is not None else default
    lam = mode.lam if mode.lam is not None else default
    return kappa, lam


def normalize(f: Formula, mode: RewriteMode) -> RewriteReport:
    """Bottom-up elimination of every box and diamond outside negations.

    Negated subtrees pass through untouched.  The applied-rule log lists
    every step with its path (child indices from the root) in an order
    that replays: folding apply_rule_at over the input reproduces the
    output exactly.
    """
    log: list[RuleApplication] = []

    def walk(node: Formula, path: tuple[int, ...]) -> Formula:
        if isinstance(node, Not):
            return node
        kids = children(node)
        node = replace_children(
            node, tuple(walk(c, path + (i,)) for i, c in enumerate(kids))
        )
        if isinstance(node, (BoxPlus, BoxMinus)):
            future = isinstance(node, BoxPlus)
            if isinstance(mode, Punctual):
                node = rewrite_box_punctual(node)
                log.append(RuleApplication("R-BOXF-P" if future else "R-BOXP-P", path))
                node = rewrite_diamond(node)
                log.append(RuleApplication("R-DIA-F" if future else "R-DIA-P", path))
            else:
                kappa, lam = _resolve_slack(mode, node.bound)
                node = rewrite_box_singleton_free(node, kappa, lam)
                log.append(
                    RuleApplication(
                        "R-BOXF-M" if future else "R-BOXP-M", path, kappa=kappa, lam=lam
                    )
                )
                dia = "R-DIA-F" if future else "R-DIA-P"
                node = And(rewrite_diamond(node.left), rewrite_diamond(node.right))
                log.append(RuleApplication(dia, path + (0,)))
                log.append(RuleApplication(dia, path + (1,)))
        elif isinstance(node, (DiaPlus, DiaMinus)):
            future = isinstance(node, DiaPlus)
            node = rewrite_diamond(node)
            log.append(RuleApplication("R-DIA-F" if future else "R-DIA-P", path))
        return node

    output = walk(f, ())
    return RewriteReport(input=f, output=output, applied=tuple(log))


def subtree_at(f: Formula, path: tuple[int, ...]) -> Formula:
    node = f
    for i in path:
        node = children(node)[i]
    return node


def replace_at(f: Formula, path: tuple[int, ...], new: Formula) -> Formula:
    if not path:
        return new
    kids = list(children(f))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return replace_children(f, tuple(kids))


def apply_rule_at(f: Formula, app: RuleApplication) -> Formula:
    """Replay a single logged rule application at its recorded path."""
    target = subtree_at(f, app.path)
    if app.rule in ("R-DIA-F", "R-DIA-P"):
        expected = DiaPlus if app.rule == "R-DIA-F" else DiaMinus
        if not isinstance(target, expected):
            raise NotApplicableError(f"{app.rule} does not match {type(target).__name__}")
        new = rewrite_diamond(target)
    elif app.rule in ("R-BOXF-P", "R-BOXP-P"):
        expected = BoxPlus if app.rule == "R-BOXF-P" else BoxMinus
        if not isinstance(target, expected):
            raise NotApplicableError(f"{app.rule} does not match {type(target).__name__}")
        new = rewrite_box_punctual(target)
    elif app.rule in ("R-BOXF-M", "R-BOXP-M"):
        expected = BoxPlus if app.rule == "R-BOXF-M" else BoxMinus
        if not isinstance(target, expected):
            raise NotApplicableError(f"{app.rule} does not match {type(target).__name__}")
        new = rewrite_box_singleton_free(target, app.kappa, app.lam)
    else:
        raise NotApplicableError(f"unknown rule {app.rule!r}")
    return replace_at(f, app.path, new)
