"""Pseudo-Cauchy sequences, pseudo-limits, congruence lifts, and the
attainability of valuation maxima.

A sequence (a_i) is pseudo-Cauchy for a valuation v when the values
v(a_{i+1} - a_i) strictly increase from some threshold on; then
v(a_j - a_i) = v(a_{i+1} - a_i) for all j > i past the threshold, and an
element h is a pseudo-limit when v(h - a_i) follows the same values.

Sequences are finitely many explicit terms, optionally extended forever
by a truncation rule: term i is the constant ``value`` written on the
first ``offset + i`` coordinates of the terminal segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .chain import Position
from .errors import (ElementInG, LiftObstruction, NotPseudoCauchy,
                     NotRepresentable, PresentationError, TooShort)
from .group import Element, GroupSpec, PairSpec
from .rib import RibElement, rib_contains
from .valuation import (SV_INF, SpineValue, SpineValueKind,
                        compare_spine_values, sv_pos, val_m)


@dataclass(frozen=True)
class TruncationRule:
    """Writes ``value`` on ever longer initial runs of the terminal segment."""

    value: RibElement
    offset: int = 1

    def __post_init__(self):
        if not self.value:
            raise PresentationError("a truncation rule needs a nonzero value")
        if self.offset < 1:
            raise PresentationError("offset must be at least 1")

    def term(self, g: GroupSpec, i: int) -> Element:
        t = g.terminal_omega
        if t is None:
            raise PresentationError("truncation rules need a terminal omega segment")
        pairs = [(Position(t, n), self.value) for n in range(self.offset + i)]
        return g.el(pairs)


@dataclass(frozen=True)
class PseudoSequence:
    terms: Tuple[Element, ...] = ()
    rule: Optional[TruncationRule] = None
    modulus: int = 0

    def __post_init__(self):
        if self.rule is None and len(self.terms) < 3:
            raise TooShort("a sequence needs at least three terms or a rule")

    @property
    def unbounded(self) -> bool:
        return self.rule is not None

    def term(self, g: GroupSpec, i: int) -> Element:
        if i < len(self.terms):
            return self.terms[i]
        if self.rule is not None:
            return self.rule.term(g, i - len(self.terms))
        raise TooShort(f"term {i} requested from a {len(self.terms)}-term sequence")

    def window(self, g: GroupSpec, extra: int = 3) -> Tuple[Element, ...]:
        n = len(self.terms) + (extra if self.rule is not None else 0)
        n = max(n, 3 + extra if self.rule is not None else len(self.terms))
        return tuple(self.term(g, i) for i in range(n))


def is_pseudo_cauchy(g: GroupSpec, seq: PseudoSequence,
                     m: Optional[int] = None):
    """Check the pseudo-Cauchy law on the materialized window.

    Returns (True, threshold) with the first index from which consecutive
    difference values strictly increase through the window, or
    (False, (i, i+1, i+2)) naming the last violating triple.
    """
    m = seq.modulus if m is None else m
    terms = seq.window(g)
    if len(terms) < 3:
        raise TooShort("need at least three terms")
    diffs = [val_m(g, g.sub(terms[i + 1], terms[i]), m)
             for i in range(len(terms) - 1)]
    threshold = 0
    for i in range(len(diffs) - 1):
        if compare_spine_values(g.spine, diffs[i], diffs[i + 1]) >= 0:
            threshold = i + 1
    if threshold >= len(diffs) - 1:
        return False, (threshold - 1, threshold, threshold + 1)
    return True, threshold


def is_pseudo_limit(g: GroupSpec, seq: PseudoSequence, h: Element,
                    m: Optional[int] = None) -> bool:
    """Whether v(h - a_i) tracks the consecutive difference values."""
    m = seq.modulus if m is None else m
    ok, threshold = is_pseudo_cauchy(g, seq, m)
    if not ok:
        raise NotPseudoCauchy("pseudo-limits only make sense past a "
                              "pseudo-Cauchy threshold")
    terms = seq.window(g)
    for i in range(threshold, len(terms) - 1):
        want = val_m(g, g.sub(terms[i + 1], terms[i]), m)
        got = val_m(g, g.sub(h, terms[i]), m)
        if compare_spine_values(g.spine, want, got) != 0:
            return False
    return True


def hahn_pseudo_limit(g: GroupSpec, seq: PseudoSequence) -> Element:
    """The coordinate-wise limit element, when the sequence determines one.

    A rule-backed sequence converges to the pure tail of its rule value
    (plus any deviations all explicit terms agree on).  Finitely many
    explicit terms never pin the eventual behaviour down.
    """
    if seq.rule is None:
        raise NotRepresentable(
            "finitely many terms do not determine the eventual coordinates")
    limit = Element((), seq.rule.value)
    if not is_pseudo_limit(g, seq, limit, seq.modulus):
        raise NotRepresentable("the explicit terms drift away from the "
                               "rule's eventual coordinates")
    return limit


# ---------------------------------------------------------------------------
# Congruence lifts.


def _strip_below(g: GroupSpec, e: Element, v: SpineValue) -> Element:
    if e.tail:
        raise LiftObstruction("lifting works on finitely supported terms")
    if v.kind is SpineValueKind.INF:
        return Element()
    if v.kind is SpineValueKind.LIMIT:
        return Element()
    cutoff = g.spine.sort_key(v.position)
    kept = tuple((p, val) for p, val in e.fp if g.spine.sort_key(p) >= cutoff)
    return Element(kept, e.tail)


def lift_mod_m(g: GroupSpec, seq: PseudoSequence, m: int) -> PseudoSequence:
    """Replace a val-mod-m pseudo-Cauchy sequence by a natural-valuation one
    congruent to it term by term.

    Each step keeps only the coordinates at or above the step's value, so
    the discarded part is an m-th multiple: a'_i is congruent to a_i
    modulo m-multiples and the natural valuation of a'_j - a'_i equals
    the coarse valuation of a_j - a_i.
    """
    if m <= 1:
        raise PresentationError("lifting needs a modulus of at least 2")
    if g.generators:
        raise LiftObstruction("lifting past generators is not supported")
    ok, witness = is_pseudo_cauchy(g, seq, m)
    if not ok:
        raise NotPseudoCauchy(f"difference values stall at indices {witness}")
    terms = seq.window(g)
    first = _strip_below(g, terms[0], val_m(g, terms[0], m))
    out = [first]
    for i in range(1, len(terms)):
        step = g.sub(terms[i], terms[i - 1])
        bump = _strip_below(g, step, val_m(g, step, m))
        out.append(g.add(out[-1], bump))
    return PseudoSequence(tuple(out), rule=None, modulus=0)


# ---------------------------------------------------------------------------
# Attainability of the valuation maximum.


@dataclass(frozen=True)
class BestInGroupWitness:
    gamma: SpineValue
    g_star: Element


@dataclass(frozen=True)
class NoMaximum:
    """The distance values approach the limit point cofinally, with no best
    approximation; ``samples`` list (approximation, achieved value) pairs."""

    samples: Tuple[Tuple[Element, SpineValue], ...]
    note: str = ""


def delta_max(g: GroupSpec, a: Element, m: int, depth: int = 4):
    """Maximum of nat_val(a - x) over m-th multiples x, if attained.

    The coarse valuation val_m(a) is by construction the supremum; a
    witness exists exactly when it is a position or INF.  At a limit
    value the approximations improve cofinally and no single multiple is
    best: the certificate shows ever better ones.
    """
    if m < 2:
        raise PresentationError("the maximum question needs a modulus of at "
                                "least 2")
    v = val_m(g, a, m)
    if v.kind is SpineValueKind.INF:
        ok, w = g.in_m_multiples(a, m)
        if ok:
            return BestInGroupWitness(SV_INF, g.scale(w, m))
        return BestInGroupWitness(SV_INF, a)  # a is zero
    if v.kind is SpineValueKind.POS:
        absorbed = _absorb_below(g, a, m, v.position)
        return BestInGroupWitness(v, absorbed)
    t = v.seg
    samples = []
    for n in range(1, depth + 1):
        cut = sv_pos(Position(t, n))
        x = _absorb_below(g, a, m, Position(t, n))
        samples.append((x, val_m(g, g.sub(a, x), 0)))
    return NoMaximum(tuple(samples),
                     note="every m-th multiple is beaten by absorbing one "
                          "more coordinate")


def _absorb_below(g: GroupSpec, a: Element, m: int, stop: Position) -> Element:
    """The m-th multiple matching a on every coordinate below ``stop``."""
    cutoff = g.spine.sort_key(stop)
    pairs = []
    for p in _coords_below(g, a, m, cutoff):
        c = g.coordinate(a, p)
        pairs.append((p, c))
    return g.el(pairs)


def _coords_below(g: GroupSpec, a: Element, m: int, cutoff) -> Iterator[Position]:
    t = g.terminal_omega
    positions = {p for p, _ in a.fp}
    if t is not None and a.tail:
        n = 0
        while g.spine.sort_key(Position(t, n)) < cutoff:
            positions.add(Position(t, n))
            n += 1
            if n > 64:
                raise PresentationError("absorption window too deep")
    for p in sorted(positions, key=g.spine.sort_key):
        if g.spine.sort_key(p) < cutoff and g.coordinate(a, p):
            yield p


# ---------------------------------------------------------------------------
# Immediate extension detection for a concrete pair.


@dataclass(frozen=True)
class ImmediateReport:
    kind: str                       # "not_immediate" | "no_maximum"
    position: Optional[Position] = None
    partial: Optional[Element] = None
    samples: Tuple = ()
    note: str = ""


def immediate_ext_check(pair: PairSpec, h: Element,
                        depth: int = 5) -> ImmediateReport:
    """How the element h of the big group approaches the small one.

    Raises ElementInG when h already belongs.  Otherwise either some
    coordinate of h cannot be matched by the small rib there (the
    extension adds width at that position: not immediate), or every
    coordinate matches and the approximations improve cofinally (the
    small group misses a pseudo-limit: not maximal).
    """
    small, big = pair.small, pair.big
    if small.contains(h):
        raise ElementInG("the candidate already lies in the small group")
    partial_pairs = []
    for p in big.support_candidates(h):
        c = big.coordinate(h, p)
        if not rib_contains(small.rib_at(p), c):
            return ImmediateReport(
                "not_immediate", position=p, partial=small.el(partial_pairs),
                note=f"coordinate {c!r} at {p} lies outside the small rib")
        if c:
            partial_pairs.append((p, c))
    t = big.terminal_omega
    samples = []
    if t is not None and h.tail:
        for n in range(1, depth + 1):
            pairs = []
            for k in range(n):
                p = Position(t, k)
                c = big.coordinate(h, p)
                if not rib_contains(small.rib_at(p), c):
                    break
                pairs.append((p, c))
            approx = small.el(pairs)
            samples.append((approx, val_m(big, big.sub(h, approx), 0)))
    return ImmediateReport(
        "no_maximum", samples=tuple(samples),
        note="every coordinate matches the small rib but the tail never "
             "lands in the small group: approximations improve cofinally")
