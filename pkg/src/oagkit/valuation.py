"""Natural and congruence valuations, induced spines, and spine quotients.

``val_m(g, e, m)`` is the coarsened valuation modulo m: the supremum of
positions delta such that e splits as (something supported at delta and
beyond) + (an m-th multiple).  Splitting below a position is a
coordinate-wise question, because finitely supported corrections are free
in every mode; so the valuation is the first position whose coordinate is
not m-divisible in its rib.  When every coordinate is m-divisible the
value is INF if e is an m-th multiple of a group element, and otherwise a
genuinely new point: the limit value sitting above the terminal segment.

m = 0 gives the natural valuation, m = 1 is identically INF.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .chain import (ALL, NONE, ChainSpec, ColourAll, ColourCofinite,
                    ColourDenseCodense, ColourFinite, ColourNone,
                    ColourRule, ColourSchematicSingletons, INF, Position,
                    SegKind, Segment)
from .errors import PresentationError, ZeroArgument
from .group import (Element, Generator, GroupSpec, RibEntry, SchematicRib,
                    nth_prime, prime_index, _primes_of)
from .rib import (RIB_ONE, RibElement, RibSpec, rib_divisible,
                  rib_min_positive)


# ---------------------------------------------------------------------------
# Spine values: positions, limit points above a segment, and INF.


class SpineValueKind(enum.Enum):
    POS = "pos"
    LIMIT = "limit"
    INF = "inf"


@dataclass(frozen=True)
class SpineValue:
    kind: SpineValueKind
    position: Optional[Position] = None
    seg: Optional[int] = None

    def __repr__(self) -> str:
        if self.kind is SpineValueKind.POS:
            return f"sv({self.position})"
        if self.kind is SpineValueKind.LIMIT:
            return f"sv(limit over segment {self.seg})"
        return "sv(INF)"


SV_INF = SpineValue(SpineValueKind.INF)


def sv_pos(p: Position) -> SpineValue:
    return SpineValue(SpineValueKind.POS, position=p)


def sv_limit(seg: int) -> SpineValue:
    return SpineValue(SpineValueKind.LIMIT, seg=seg)


def spine_value_key(chain: ChainSpec, v: SpineValue):
    """Sort key: positions in chain order, limit above its segment, INF last."""
    if v.kind is SpineValueKind.INF:
        return (1, 0, 0, 0)
    if v.kind is SpineValueKind.POS:
        _, seg, local = chain.sort_key(v.position)
        return (0, seg, 0, local)
    return (0, v.seg, 1, 0)


def compare_spine_values(chain: ChainSpec, a: SpineValue, b: SpineValue) -> int:
    ka, kb = spine_value_key(chain, a), spine_value_key(chain, b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# The valuation itself.


def _divisibility_candidates(g: GroupSpec, e: Element, m: int) -> Iterator[Position]:
    """Positions where the coordinate of e might fail m-divisibility.

    Deviations, plus terminal coordinates where the tail (or tail/m)
    misbehaves, in ascending order.  Outside this list the coordinate is
    0 or a tail value that divides cleanly.
    """
    t = g.terminal_omega
    positions = [p for p, _ in e.fp]
    if t is not None and e.tail:
        top = 0
        for pos, _ in e.fp:
            if pos.seg == t:
                top = max(top, pos.coord + 1)
        scaled = e.tail.scale(Fraction(1, m))
        for n in g._tail_bad_coords(e.tail) + g._tail_bad_coords(scaled):
            top = max(top, n + 1)
        entry = g._terminal_entry()
        if (entry is not None and entry.schematic is None
                and not rib_divisible(entry.rib_at(Position(t, 0)), e.tail, m)[0]):
            top += 1  # the first free terminal coordinate already fails
        positions.extend(Position(t, n) for n in range(top + 1))
    seen = set()
    positions.sort(key=g.spine.sort_key)
    for p in positions:
        if p not in seen:
            seen.add(p)
            yield p


def val_m(g: GroupSpec, e: Element, m: int) -> SpineValue:
    """The valuation of e modulo m (m = 0: natural valuation)."""
    if m < 0:
        raise PresentationError("modulus must be nonnegative")
    if m == 1:
        return SV_INF
    if m == 0:
        v = g.nat_val(e)
        return SV_INF if v is INF else sv_pos(v)
    for p in _divisibility_candidates(g, e, m):
        ok, _ = rib_divisible(g.rib_at(p), g.coordinate(e, p), m)
        if not ok:
            return sv_pos(p)
    if not e.tail:
        return SV_INF
    if g.mode == "hahn":
        return SV_INF
    if g.generators and g.tail_coefficients(e.tail.scale(Fraction(1, m))) is not None:
        return SV_INF
    return sv_limit(g.terminal_omega)


def nat_val_sv(g: GroupSpec, e: Element) -> SpineValue:
    return val_m(g, e, 0)


# ---------------------------------------------------------------------------
# Leading-coefficient predicates.


def pred_eq_bullet(g: GroupSpec, a: Element, k: int) -> bool:
    """Leading coefficient equals k times the least positive rib element.

    Meaningful only where the rib at the leading position is discrete;
    elsewhere the predicate is false.
    """
    v = g.nat_val(a)
    if v is INF:
        raise ZeroArgument("the zero element has no leading coefficient")
    rib = g.rib_at(v)
    one = rib_min_positive(rib)
    if one is None:
        return False
    return g.coordinate(a, v) == one.scale(k)


def pred_cong_bullet(g: GroupSpec, a: Element, m: int, k: int) -> bool:
    """Coefficient at the modulus-m valuation is congruent to k there.

    False when val_m(a) is INF or a limit value (no coordinate to read),
    and false at positions with a dense rib.
    """
    if m <= 1:
        raise PresentationError("congruence needs a modulus of at least 2")
    v = val_m(g, a, m)
    if v.kind is not SpineValueKind.POS:
        return False
    rib = g.rib_at(v.position)
    one = rib_min_positive(rib)
    if one is None:
        return False
    ok, _ = rib_divisible(rib, g.coordinate(a, v.position) - one.scale(k), m)
    return ok


# ---------------------------------------------------------------------------
# Segment layouts: how the rib assignment looks on one segment.


@dataclass(frozen=True)
class SegmentLayout:
    kind: str                 # "uniform" | "split" | "schematic"
    rib: Optional[RibSpec] = None
    colour: Optional[str] = None
    rib_off: Optional[RibSpec] = None
    schematic: Optional[SchematicRib] = None


def segment_layout(g: GroupSpec, i: int) -> SegmentLayout:
    applicable = [e for e in g.ribs
                  if e.position is None and (e.segment is None or e.segment == i)]
    if not applicable:
        raise PresentationError(f"no rib clause covers segment {i}")
    head = applicable[0]
    if head.schematic is not None:
        return SegmentLayout("schematic", schematic=head.schematic)
    if head.colour is not None:
        rest = [e for e in applicable[1:] if e.colour is None and e.schematic is None]
        if not rest:
            raise PresentationError(
                f"segment {i}: colour clause needs a fallback clause")
        return SegmentLayout("split", rib=head.rib, colour=head.colour,
                             rib_off=rest[0].rib)
    return SegmentLayout("uniform", rib=head.rib)


def _m_hits(rib: RibSpec, m: int) -> bool:
    """Whether the rib contributes values modulo m (some index above 1)."""
    return any(rib.index_at(p) > 1 for p in _primes_of(m))


def _colour_region_piece(chain: ChainSpec, i: int, colour: str, positive: bool):
    rule = chain.colour_named(colour).rule_at(i)
    if isinstance(rule, ColourNone):
        base = NONE
    elif isinstance(rule, ColourAll):
        base = ALL
    elif isinstance(rule, ColourFinite):
        base = ("only", frozenset(rule.coords))
    elif isinstance(rule, ColourCofinite):
        base = ("minus", frozenset(rule.excluded))
    elif isinstance(rule, ColourDenseCodense):
        base = ("dense", colour, True)
    else:
        raise PresentationError("schematic colours cannot split a rib assignment")
    if positive:
        return base
    from .chain import _complement_piece
    return _complement_piece(base)


def _schematic_hit_coords(s: SchematicRib, m: int) -> frozenset:
    coords = set()
    primes = _primes_of(m)
    for n, p in enumerate(s.primes):
        if p in primes:
            coords.add(n)
    for p in primes:
        try:
            idx = prime_index(p)
        except PresentationError:
            continue
        if idx >= len(s.primes) and _m_hits(s.rib_for(idx), m):
            coords.add(idx)
    return frozenset(coords)


def _segment_value_piece(g: GroupSpec, i: int, m: int):
    lay = segment_layout(g, i)
    if lay.kind == "uniform":
        return ALL if _m_hits(lay.rib, m) else NONE
    if lay.kind == "schematic":
        return ("only", _schematic_hit_coords(lay.schematic, m))
    on = _m_hits(lay.rib, m)
    off = _m_hits(lay.rib_off, m)
    if on and off:
        return ALL
    if not on and not off:
        return NONE
    return _colour_region_piece(g.spine, i, lay.colour, positive=on)


def _limit_in_value_set(g: GroupSpec, m: int) -> Optional[Element]:
    """A generator combination witnessing the limit value modulo m, if any.

    Needs integer coefficients, not all divisible by m, whose tail
    combination is m-divisible coordinate-wise.  Divisibility of the
    combination only depends on the coefficients modulo m.
    """
    if not g.generators or m <= 1:
        return None
    k = len(g.generators)
    for coeffs in itertools.product(range(m), repeat=k):
        if all(c == 0 for c in coeffs):
            continue
        tail = RibElement(0)
        for c, gen in zip(coeffs, g.generators):
            tail = tail + gen.tail.scale(c)
        e = Element((), tail)
        if not tail:
            continue
        if val_m(g, e, m).kind is SpineValueKind.LIMIT:
            return e
    return None


@dataclass(frozen=True)
class ValueSet:
    """The set of values of val_m on nonzero arguments, plus INF."""

    m: int
    pieces: tuple
    limit_seg: Optional[int]
    inf: bool = True

    def contains_limit(self) -> bool:
        return self.limit_seg is not None


def spine_m(g: GroupSpec, m: int) -> ValueSet:
    n = len(g.spine.segments)
    if m == 0:
        return ValueSet(0, (ALL,) * n, None)
    if m == 1:
        return ValueSet(1, (NONE,) * n, None)
    pieces = tuple(_segment_value_piece(g, i, m) for i in range(n))
    witness = _limit_in_value_set(g, m)
    return ValueSet(m, pieces, g.terminal_omega if witness is not None else None)


def value_set_contains(g: GroupSpec, vs: ValueSet, v: SpineValue) -> bool:
    if v.kind is SpineValueKind.INF:
        return vs.inf
    if v.kind is SpineValueKind.LIMIT:
        return vs.limit_seg == v.seg
    p = v.position
    piece = vs.pieces[p.seg]
    tag = piece[0]
    if tag == "all":
        return True
    if tag == "none":
        return False
    if tag == "only":
        return p.coord in piece[1]
    if tag == "minus":
        return p.coord not in piece[1]
    if tag == "dense":
        return g.spine.has_colour(piece[1], p) == piece[2]
    raise PresentationError(f"unhandled value piece {piece!r}")


# ---------------------------------------------------------------------------
# Relevant primes and the union of all prime value sets.


def relevant_primes(g: GroupSpec):
    """(finite set of primes that matter, True if int ribs add a wildcard,
    True if a schematic tail enumeration makes the set unbounded)."""
    primes = set()
    wildcard = False
    unbounded = False
    for i in range(len(g.spine.segments)):
        lay = segment_layout(g, i)
        ribs = []
        if lay.kind == "uniform":
            ribs = [lay.rib]
        elif lay.kind == "split":
            ribs = [lay.rib, lay.rib_off]
        else:
            for n, p in enumerate(lay.schematic.primes):
                primes.add(p)
            unbounded = True  # the tail enumeration runs through all primes
        for r in ribs:
            nd = r.nondivisible_primes
            if nd is None:
                wildcard = True
            else:
                primes.update(nd)
    for gen in g.generators:
        for v in (gen.tail.q, gen.tail.w, gen.tail.q + gen.tail.w):
            primes.update(_primes_of(v.numerator))
            primes.update(_primes_of(v.denominator))
    return primes, wildcard, unbounded


def _union_piece(g: GroupSpec, i: int):
    """Piece of the union of all prime value sets on segment i."""
    lay = segment_layout(g, i)
    if lay.kind == "uniform":
        return NONE if lay.rib.nondivisible_primes == () else ALL
    if lay.kind == "schematic":
        return ALL  # coordinate n is pinned by its own prime
    on = lay.rib.nondivisible_primes != ()
    off = lay.rib_off.nondivisible_primes != ()
    if on and off:
        return ALL
    if not on and not off:
        return NONE
    return _colour_region_piece(g.spine, i, lay.colour, positive=on)


# ---------------------------------------------------------------------------
# Spine quotients.


@dataclass(frozen=True)
class SpineQuotient:
    """Quotient of the spine by "same value-set points strictly above".

    Classes are convex, closed at the bottom at each value-set point.
    ``identity`` means every class is a single position.  For finite
    spines the classes are listed explicitly; other non-identity
    quotients are only described.
    """

    identity: bool
    classes: Optional[tuple] = None   # tuple of tuples of positions, ascending
    chain: Optional[ChainSpec] = None  # order type of the quotient, when known
    note: str = ""


def _piece_identity_like(piece) -> bool:
    return piece[0] in ("all", "dense")


def _finite_spine_classes(g: GroupSpec, member) -> tuple:
    """Bottom-closed classes of a finite spine under the point set given
    by the membership predicate."""
    positions = sorted((p for p in _all_fin_positions(g.spine)),
                       key=g.spine.sort_key)
    classes = []
    current = []
    for p in positions:
        if member(p) and current:
            classes.append(tuple(current))
            current = []
        current.append(p)
    if current:
        classes.append(tuple(current))
    return tuple(classes)


def _all_fin_positions(chain: ChainSpec) -> Iterator[Position]:
    for i, seg in enumerate(chain.segments):
        if seg.kind is not SegKind.FIN:
            raise PresentationError("explicit classes need a finite spine")
        for c in range(seg.size):
            yield Position(i, c)


def _is_finite_spine(chain: ChainSpec) -> bool:
    return all(s.kind is SegKind.FIN for s in chain.segments)


def t_spine(g: GroupSpec, m: int) -> SpineQuotient:
    """Quotient of the spine by equality of val_m value sets strictly above."""
    vs = spine_m(g, m)
    if all(_piece_identity_like(p) for p in vs.pieces):
        return SpineQuotient(identity=True, chain=g.spine,
                             note="every position starts its own class")
    if _is_finite_spine(g.spine):
        classes = _finite_spine_classes(
            g, lambda p: value_set_contains(g, vs, sv_pos(p)))
        return SpineQuotient(identity=False, classes=classes,
                             chain=_fin_chain(len(classes)),
                             note="finite spine: classes listed in ascending order")
    return SpineQuotient(identity=False,
                         note="infinite spine with a sparse value set: "
                              "classes are infinite convex blocks")


def _fin_chain(n: int) -> ChainSpec:
    from .chain import fin
    return fin(n)


# Derived colours on the regular spine -------------------------------------


def _informative(pieces: Sequence) -> bool:
    tags = {p[0] for p in pieces}
    return not (tags <= {"all"} or tags <= {"none"})


def _piece_to_colour_rule(piece) -> object:
    tag = piece[0]
    if tag == "all":
        return ColourAll()
    if tag == "none":
        return ColourNone()
    if tag == "only":
        return ColourFinite(piece[1])
    if tag == "minus":
        return ColourCofinite(piece[1])
    if tag == "dense":
        return ColourDenseCodense(representable=piece[2])
    raise PresentationError(f"piece {piece!r} has no colour form")


def regular_spine(g: GroupSpec) -> SpineQuotient:
    """The spine quotient under the union of all prime value sets, carrying
    the colours a classifier needs: the original ones, the images of the
    prime value sets for the finitely many relevant primes, and the locus
    of discrete ribs."""
    n = len(g.spine.segments)
    union_pieces = tuple(_union_piece(g, i) for i in range(n))
    identity = all(_piece_identity_like(p) for p in union_pieces)
    if not identity:
        if _is_finite_spine(g.spine):
            vs_member = _union_membership(g, union_pieces)
            classes = _finite_spine_classes(g, vs_member)
            return SpineQuotient(identity=False, classes=classes,
                                 chain=_fin_chain(len(classes)),
                                 note="finite spine: classes listed ascending")
        return SpineQuotient(identity=False,
                             note="sparse prime value sets over an infinite "
                                  "spine: quotient not finitely presented")
    colours = list(g.spine.colours)
    primes, wildcard, unbounded = relevant_primes(g)
    probe = sorted(primes)
    if wildcard:
        probe = sorted(set(probe) | {2})
    if unbounded:
        probe = sorted(set(probe) | {nth_prime(0), nth_prime(1)})
    existing = {tuple(c.rules): c.name for c in colours}
    for p in probe[:6]:
        vs = spine_m(g, p)
        if not _informative(vs.pieces):
            continue
        rules = tuple(_piece_to_colour_rule(pc) for pc in vs.pieces)
        if rules in existing:
            continue
        name = f"mod-{p} values"
        existing[rules] = name
        colours.append(ColourRule(name, rules))
    disc = tuple(_discreteness_piece(g, i) for i in range(n))
    if _informative(disc):
        rules = tuple(_piece_to_colour_rule(pc) for pc in disc)
        if rules not in existing:
            colours.append(ColourRule("discrete ribs", rules))
    chain = ChainSpec(g.spine.segments, tuple(colours))
    return SpineQuotient(identity=True, chain=chain,
                         note="identity quotient with derived colours")


def _union_membership(g: GroupSpec, pieces):
    def member(p: Position) -> bool:
        piece = pieces[p.seg]
        tag = piece[0]
        if tag == "all":
            return True
        if tag == "none":
            return False
        if tag == "only":
            return p.coord in piece[1]
        if tag == "minus":
            return p.coord not in piece[1]
        if tag == "dense":
            return g.spine.has_colour(piece[1], p) == piece[2]
        raise PresentationError(f"unhandled piece {piece!r}")
    return member


def _discreteness_piece(g: GroupSpec, i: int):
    lay = segment_layout(g, i)
    if lay.kind == "uniform":
        return ALL if lay.rib.discrete else NONE
    if lay.kind == "schematic":
        return NONE  # both templates are dense
    on, off = lay.rib.discrete, lay.rib_off.discrete
    if on and off:
        return ALL
    if not on and not off:
        return NONE
    return _colour_region_piece(g.spine, i, lay.colour, positive=on)


# ---------------------------------------------------------------------------
# Structural hypotheses: no new limit values (M), uniform value sets (UR).


@dataclass(frozen=True)
class HypothesisResult:
    """Outcome of a structural hypothesis check.

    ``holds`` is True/False; ``bounded`` marks a search that only covered
    moduli up to the stated bound, as opposed to a symbolic argument.
    """

    hypothesis: str
    holds: bool
    modulus: Optional[int] = None
    witness: Optional[object] = None
    note: str = ""
    bounded: bool = False


def check_m(g: GroupSpec, bound: int = 12) -> HypothesisResult:
    """No modulus puts a limit value into the value set.

    Full products and plain sums satisfy this outright: all-coordinate
    divisibility there already yields an m-th multiple.  With generators,
    a coefficient combination whose tail is coordinate-wise divisible but
    not divisible inside the generator lattice is a counterexample; the
    search over coefficients modulo m is exhaustive for each m.
    """
    if g.mode == "hahn":
        return HypothesisResult("M", True,
                                note="full product: coordinate-wise divisibility "
                                     "produces a witness element")
    if not g.generators:
        return HypothesisResult("M", True,
                                note="finitely supported elements: divisibility "
                                     "is settled coordinate by coordinate")
    for m in range(2, bound + 1):
        e = _limit_in_value_set(g, m)
        if e is not None:
            return HypothesisResult("M", False, modulus=m, witness=e,
                                    note=f"generator combination with a limit "
                                         f"value modulo {m}")
    return HypothesisResult("M", True, bounded=True,
                            note=f"no limit values for moduli up to {bound}")


def check_ur(g: GroupSpec, bound: int = 64) -> HypothesisResult:
    """One modulus N whose value set already separates like all of them.

    The product of the finitely many relevant primes works whenever the
    rib assignment only involves finitely many primes (discrete ribs act
    alike for every modulus, so one representative prime covers them).  A
    schematic assignment running through infinitely many primes defeats
    every finite N: each later prime pins a coordinate no earlier value
    set sees.
    """
    primes, wildcard, unbounded = relevant_primes(g)
    if unbounded:
        beyond = nth_prime(max(len(g.ribs), 2))
        return HypothesisResult(
            "UR", False, witness=f"prime {beyond} pins a coordinate outside "
                                 f"any fixed value set",
            note="rib assignment runs through infinitely many primes")
    probe = sorted(primes | ({2} if wildcard or not primes else set()))
    n_val = 1
    for p in probe:
        n_val *= p
    vs_n = spine_m(g, n_val)
    for i in range(len(g.spine.segments)):
        union = _union_piece(g, i)
        if _normalize_cmp(vs_n.pieces[i]) != _normalize_cmp(union):
            return HypothesisResult(
                "UR", False, modulus=n_val,
                witness=f"segment {i}",
                note=f"the modulus-{n_val} value set misses part of the union")
    limit_any = any(_limit_in_value_set(g, p) is not None for p in probe)
    limit_n = vs_n.limit_seg is not None
    if limit_any and not limit_n:
        return HypothesisResult("UR", False, modulus=n_val,
                                witness="limit value",
                                note="a prime sees the limit value but the "
                                     "product modulus does not")
    return HypothesisResult("UR", True, modulus=n_val, bounded=n_val > bound,
                            note=f"value set modulo {n_val} separates like the "
                                 f"union over all primes")


def _normalize_cmp(piece):
    if piece[0] == "only" and not piece[1]:
        return NONE
    return piece
