"""Coloured chains, their cuts, and parameter-definability of cuts.

A chain here is a finite concatenation of *segments*, each of a stock order
type (finite, omega, reversed omega, integers, rationals-like dense, or
complete dense).  Chains may carry unary colours.  The chain is always
considered together with a top element ``INF`` adjoined, because these
chains serve as value sets of valuations.

The central question answered by this module: given a cut of the chain, is
it definable (with parameters from the chain) in the language of the order
plus the colours?  The classifier is a sound rule engine; cuts outside its
rule table come back ``UNKNOWN`` rather than guessed.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .errors import PositionOutOfDomain, PresentationError


class SegKind(enum.Enum):
    FIN = "fin"
    OMEGA = "omega"
    OMEGA_STAR = "omega_star"
    INT = "int"
    DENSE_Q = "dense_q"
    DENSE_COMPLETE = "dense_complete"

    @property
    def has_min(self) -> bool:
        return self in (SegKind.FIN, SegKind.OMEGA)

    @property
    def has_max(self) -> bool:
        return self in (SegKind.FIN, SegKind.OMEGA_STAR)

    @property
    def is_dense(self) -> bool:
        return self in (SegKind.DENSE_Q, SegKind.DENSE_COMPLETE)

    @property
    def is_finite(self) -> bool:
        return self is SegKind.FIN


@dataclass(frozen=True)
class Segment:
    kind: SegKind
    size: int = 0  # used only for FIN

    def __post_init__(self):
        if self.kind is SegKind.FIN and self.size <= 0:
            raise PresentationError("finite segment needs a positive size")
        if self.kind is not SegKind.FIN and self.size != 0:
            raise PresentationError("size only applies to finite segments")


@dataclass(frozen=True)
class _InfType:
    """Top element adjoined to every chain."""

    def __repr__(self) -> str:
        return "INF"


INF = _InfType()

Coord = Union[int, Fraction]


@dataclass(frozen=True, order=False)
class Position:
    """A point of the chain: segment index plus a local coordinate.

    Coordinates are counted from the small end, except on OMEGA_STAR
    segments where ``coord`` is the distance from the top (coord 0 is the
    segment maximum).  Dense segments take Fraction coordinates.
    """

    seg: int
    coord: Coord

    def __repr__(self) -> str:
        return f"pos({self.seg}, {self.coord})"


def _local_key(kind: SegKind, coord: Coord):
    if kind is SegKind.OMEGA_STAR:
        return -coord
    return coord


# Per-segment colour rules.  Each is a small tagged tuple so they stay
# hashable and easy to pattern match on.

@dataclass(frozen=True)
class ColourNone:
    pass


@dataclass(frozen=True)
class ColourAll:
    pass


@dataclass(frozen=True)
class ColourFinite:
    coords: frozenset


@dataclass(frozen=True)
class ColourCofinite:
    excluded: frozenset


@dataclass(frozen=True)
class ColourDenseCodense:
    """A dense, codense, cofinal and coinitial subset of a dense segment.

    ``representable`` says whether the marked points are the ones we can
    name by Fraction coordinates (True) or a phantom complementary class
    (False).
    """

    representable: bool = True


@dataclass(frozen=True)
class ColourSchematicSingletons:
    """One singleton colour per coordinate n, given uniformly in n.

    ``params`` carries the per-index datum (for instance a prime for each
    n).  A schematic family is infinitely many unary predicates, so no
    single formula can use the whole family; the cut classifier treats it
    as naming finitely many points only.
    """

    params: tuple = ()


SegmentColourRule = Union[
    ColourNone, ColourAll, ColourFinite, ColourCofinite,
    ColourDenseCodense, ColourSchematicSingletons,
]


@dataclass(frozen=True)
class ColourRule:
    name: str
    rules: tuple  # one SegmentColourRule per segment; short tuples pad with ColourNone

    def rule_at(self, seg: int) -> SegmentColourRule:
        if seg < len(self.rules):
            return self.rules[seg]
        return ColourNone()


@dataclass(frozen=True)
class ChainSpec:
    segments: tuple
    colours: tuple = ()

    def __post_init__(self):
        for s in self.segments:
            if not isinstance(s, Segment):
                raise PresentationError("segments must be Segment instances")
        for c in self.colours:
            if not isinstance(c, ColourRule):
                raise PresentationError("colours must be ColourRule instances")

    # -- basic geometry ------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.segments

    def check_position(self, p: Position) -> None:
        if not (0 <= p.seg < len(self.segments)):
            raise PositionOutOfDomain(f"segment {p.seg} out of range")
        seg = self.segments[p.seg]
        c = p.coord
        if seg.kind.is_dense:
            if not isinstance(c, (int, Fraction)):
                raise PositionOutOfDomain("dense coordinate must be rational")
            return
        if not isinstance(c, int) or isinstance(c, bool):
            raise PositionOutOfDomain("discrete coordinate must be an int")
        if seg.kind is SegKind.FIN and not (0 <= c < seg.size):
            raise PositionOutOfDomain(f"coordinate {c} outside finite segment")
        if seg.kind in (SegKind.OMEGA, SegKind.OMEGA_STAR) and c < 0:
            raise PositionOutOfDomain("coordinate must be nonnegative")

    def sort_key(self, p):
        """Total order on positions and INF.  Smaller key = smaller point."""
        if p is INF:
            return (1, 0, 0)
        self.check_position(p)
        kind = self.segments[p.seg].kind
        return (0, p.seg, _local_key(kind, p.coord))

    def lt(self, a, b) -> bool:
        return self.sort_key(a) < self.sort_key(b)

    def le(self, a, b) -> bool:
        return self.sort_key(a) <= self.sort_key(b)

    def min_position(self) -> Optional[Position]:
        """Least point of the chain, or None if the chain has no minimum."""
        if self.is_empty:
            return None
        seg = self.segments[0]
        if seg.kind.has_min:
            return Position(0, 0)
        return None

    def max_position(self) -> Optional[Position]:
        if self.is_empty:
            return None
        i = len(self.segments) - 1
        seg = self.segments[i]
        if seg.kind is SegKind.FIN:
            return Position(i, seg.size - 1)
        if seg.kind is SegKind.OMEGA_STAR:
            return Position(i, 0)
        return None

    def succ_of(self, p: Position):
        """Immediate successor in the chain with INF on top.

        Returns a Position, INF, or None when no immediate successor
        exists (dense neighbourhood above).
        """
        self.check_position(p)
        seg = self.segments[p.seg]
        k, c = seg.kind, p.coord
        if k is SegKind.FIN and c < seg.size - 1:
            return Position(p.seg, c + 1)
        if k is SegKind.OMEGA or k is SegKind.INT:
            return Position(p.seg, c + 1)
        if k is SegKind.OMEGA_STAR and c > 0:
            return Position(p.seg, c - 1)
        if k.is_dense:
            return None
        # at the top of a segment with a maximum: look right
        j = p.seg + 1
        if j >= len(self.segments):
            return INF
        nxt = self.segments[j]
        if nxt.kind.has_min:
            return Position(j, 0)
        return None

    def pred_of(self, p):
        """Immediate predecessor, or None.  Accepts INF."""
        if p is INF:
            mp = self.max_position()
            return mp
        self.check_position(p)
        seg = self.segments[p.seg]
        k, c = seg.kind, p.coord
        if k is SegKind.FIN and c > 0:
            return Position(p.seg, c - 1)
        if k is SegKind.INT:
            return Position(p.seg, c - 1)
        if k is SegKind.OMEGA and c > 0:
            return Position(p.seg, c - 1)
        if k is SegKind.OMEGA_STAR:
            return Position(p.seg, c + 1)
        if k.is_dense:
            return None
        j = p.seg - 1
        if j < 0:
            return None
        prv = self.segments[j]
        if prv.kind is SegKind.FIN:
            return Position(j, prv.size - 1)
        if prv.kind is SegKind.OMEGA_STAR:
            return Position(j, 0)
        return None

    def sample_positions(self, per_segment: int = 4) -> Iterator[Position]:
        for i, seg in enumerate(self.segments):
            k = seg.kind
            if k is SegKind.FIN:
                for c in range(min(seg.size, per_segment)):
                    yield Position(i, c)
                if seg.size > per_segment:
                    yield Position(i, seg.size - 1)
            elif k in (SegKind.OMEGA, SegKind.OMEGA_STAR):
                for c in range(per_segment):
                    yield Position(i, c)
            elif k is SegKind.INT:
                for c in range(-(per_segment // 2), per_segment // 2 + 1):
                    yield Position(i, c)
            else:
                for c in (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(2)):
                    yield Position(i, c)

    def colour_named(self, name: str) -> ColourRule:
        for c in self.colours:
            if c.name == name:
                return c
        raise PresentationError(f"no colour named {name!r}")

    def has_colour(self, name: str, p: Position) -> bool:
        """Membership of a named colour at a representable position."""
        rule = self.colour_named(name).rule_at(p.seg)
        if isinstance(rule, ColourNone):
            return False
        if isinstance(rule, ColourAll):
            return True
        if isinstance(rule, ColourFinite):
            return p.coord in rule.coords
        if isinstance(rule, ColourCofinite):
            return p.coord not in rule.excluded
        if isinstance(rule, ColourDenseCodense):
            return rule.representable
        if isinstance(rule, ColourSchematicSingletons):
            # family of singletons: "some member colours p" is true at
            # every coordinate the family enumerates
            return isinstance(p.coord, int) and p.coord >= 0
        raise PresentationError("unhandled colour rule")


# ---------------------------------------------------------------------------
# Cuts


class CutKind(enum.Enum):
    MINUS_INF = "minus_inf"
    PLUS_INF = "plus_inf"
    PRINCIPAL_PLUS = "principal_plus"    # L = {x <= p}
    PRINCIPAL_MINUS = "principal_minus"  # L = {x < p}
    SEGMENT_BOUNDARY = "segment_boundary"  # L = segments 0..index
    LIMIT = "limit"                      # open end or dense interior


class LimitSide(enum.Enum):
    LOW = "low"
    HIGH = "high"
    INTERIOR = "interior"


@dataclass(frozen=True)
class Cut:
    kind: CutKind
    position: Optional[Position] = None   # for principal cuts
    index: Optional[int] = None           # boundary index / limit segment
    side: Optional[LimitSide] = None      # for LIMIT

    def describe(self) -> str:
        k = self.kind
        if k is CutKind.MINUS_INF:
            return "below everything"
        if k is CutKind.PLUS_INF:
            return "above the whole chain, below INF"
        if k is CutKind.PRINCIPAL_PLUS:
            return f"just above {self.position}"
        if k is CutKind.PRINCIPAL_MINUS:
            return f"just below {self.position}"
        if k is CutKind.SEGMENT_BOUNDARY:
            return f"after segment {self.index}"
        return f"limit cut in segment {self.index} ({self.side.value})"


class CutStatus(enum.Enum):
    DEFINABLE = "definable"
    NOT_DEFINABLE = "not_definable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CutClass:
    status: CutStatus
    rule: str
    detail: str = ""


# ---------------------------------------------------------------------------
# Piece sets: finitely presented subsets of the chain plus INF.
#
# One piece per segment, drawn from:
#   ("all",)            whole segment
#   ("none",)           empty on the segment
#   ("only", S)         exactly the finite coordinate set S
#   ("minus", S)        all but the finite coordinate set S
#   ("dense", tag, pos) a dense-codense subset (pos False = its complement)
#   ("lo", c, incl)     downward ray within the segment
#   ("hi", c, incl)     upward ray within the segment
#   ("schematic",)      poisoned: not one definable set
#
# plus a flag for membership of INF.

ALL = ("all",)
NONE = ("none",)
SCHEMATIC = ("schematic",)


@dataclass(frozen=True)
class PieceSet:
    pieces: tuple
    inf: bool = False
    poisoned: bool = False

    def piece(self, i: int):
        return self.pieces[i]


def _piece_nonempty(piece) -> bool:
    tag = piece[0]
    if tag == "none":
        return False
    if tag == "only":
        return bool(piece[1])
    return True


def _normalize_piece(seg: Segment, piece):
    """Convert rays to explicit finite data where the segment allows it."""
    tag = piece[0]
    k = seg.kind
    if tag in ("lo", "hi"):
        c, incl = piece[1], piece[2]
        if k is SegKind.FIN:
            rng = range(seg.size)
            if tag == "lo":
                keep = frozenset(x for x in rng if x < c or (incl and x == c))
            else:
                keep = frozenset(x for x in rng if x > c or (incl and x == c))
            return ("only", keep)
        if k is SegKind.OMEGA:
            if tag == "lo":
                top = c if incl else c - 1
                return ("only", frozenset(range(max(top + 1, 0))))
            bot = c if incl else c + 1
            return ("minus", frozenset(range(max(bot, 0))))
        if k is SegKind.OMEGA_STAR:
            # coordinates count down from the top
            if tag == "lo":  # points <= / < the point at depth c
                bot = c if incl else c + 1
                return ("minus", frozenset(range(max(bot, 0))))
            top = c if incl else c - 1
            return ("only", frozenset(range(max(top + 1, 0))))
    if tag in ("only", "minus") and k is SegKind.FIN:
        rng = frozenset(range(seg.size))
        s = frozenset(piece[1]) & rng if tag == "only" else rng - frozenset(piece[1])
        return ("only", s)
    return piece


def _complement_piece(piece):
    tag = piece[0]
    if tag == "all":
        return NONE
    if tag == "none":
        return ALL
    if tag == "only":
        return ("minus", piece[1])
    if tag == "minus":
        return ("only", piece[1])
    if tag == "dense":
        return ("dense", piece[1], not piece[2])
    if tag == "lo":
        return ("hi", piece[1], not piece[2])
    if tag == "hi":
        return ("lo", piece[1], not piece[2])
    return SCHEMATIC


def complement(ps: PieceSet) -> PieceSet:
    return PieceSet(tuple(_complement_piece(p) for p in ps.pieces),
                    inf=not ps.inf, poisoned=ps.poisoned)


def _finite_diff(seg: Segment, a, b) -> bool:
    """Whether the symmetric difference of two pieces is finite."""
    a = _normalize_piece(seg, a)
    b = _normalize_piece(seg, b)
    if a[0] == "schematic" or b[0] == "schematic":
        return False
    if seg.kind is SegKind.FIN:
        return True
    if a == b:
        return True
    ta, tb = a[0], b[0]
    if {ta, tb} <= {"all", "minus"}:
        return True
    if {ta, tb} <= {"none", "only"}:
        return True
    if ta == "dense" or tb == "dense":
        return ta == tb and a[1] == b[1] and a[2] == b[2]
    if ta in ("lo", "hi") or tb in ("lo", "hi"):
        if ta == tb and seg.kind is SegKind.INT:
            return True  # two rays the same way differ by an integer interval
        return False
    return False


def piece_sets_equal_mod_finite(chain: ChainSpec, x: PieceSet, y: PieceSet) -> bool:
    if x.poisoned or y.poisoned:
        return False
    return all(_finite_diff(seg, x.pieces[i], y.pieces[i])
               for i, seg in enumerate(chain.segments))


def _dc_within(seg: Segment, piece):
    """Downward closure of a piece inside its own segment."""
    piece = _normalize_piece(seg, piece)
    tag = piece[0]
    k = seg.kind
    if tag in ("none",):
        return NONE
    if tag in ("all", "dense"):
        return ALL  # dense colours are cofinal by convention
    if tag == "lo":
        return piece
    if tag == "hi":
        return ALL if _piece_nonempty(piece) else NONE
    if tag == "minus":
        if k is SegKind.OMEGA_STAR:
            m = 0
            while m in piece[1]:
                m += 1
            return ("minus", frozenset(range(m)))
        return ALL  # cofinal in a maxless segment
    # tag == "only"
    s = piece[1]
    if not s:
        return NONE
    if k is SegKind.OMEGA:
        return ("only", frozenset(range(max(s) + 1)))
    if k is SegKind.OMEGA_STAR:
        return ("minus", frozenset(range(min(s))))
    return ("lo", max(s), True)


def _uc_within(seg: Segment, piece):
    piece = _normalize_piece(seg, piece)
    tag = piece[0]
    k = seg.kind
    if tag in ("none",):
        return NONE
    if tag in ("all", "dense"):
        return ALL  # dense colours are coinitial by convention
    if tag == "hi":
        return piece
    if tag == "lo":
        return ALL if _piece_nonempty(piece) else NONE
    if tag == "minus":
        if k is SegKind.OMEGA:
            m = 0
            while m in piece[1]:
                m += 1
            return ("minus", frozenset(range(m)))
        return ALL  # coinitial in a minless segment
    s = piece[1]
    if not s:
        return NONE
    if k is SegKind.OMEGA_STAR:
        return ("only", frozenset(range(max(s) + 1)))
    if k is SegKind.OMEGA:
        return ("minus", frozenset(range(min(s))))
    return ("hi", min(s), True)


def downward_closure(chain: ChainSpec, x: PieceSet) -> PieceSet:
    if x.poisoned:
        return x
    n = len(chain.segments)
    if x.inf:
        return PieceSet((ALL,) * n, inf=True)
    top = None
    for i in range(n - 1, -1, -1):
        if _piece_nonempty(_normalize_piece(chain.segments[i], x.pieces[i])):
            top = i
            break
    if top is None:
        return PieceSet((NONE,) * n, inf=False)
    pieces = []
    for i in range(n):
        if i < top:
            pieces.append(ALL)
        elif i > top:
            pieces.append(NONE)
        else:
            pieces.append(_dc_within(chain.segments[i], x.pieces[i]))
    return PieceSet(tuple(pieces), inf=False)


def upward_closure(chain: ChainSpec, x: PieceSet) -> PieceSet:
    if x.poisoned:
        return x
    n = len(chain.segments)
    bot = None
    for i in range(n):
        if _piece_nonempty(_normalize_piece(chain.segments[i], x.pieces[i])):
            bot = i
            break
    if bot is None:
        return PieceSet((NONE,) * n, inf=x.inf)
    pieces = []
    for i in range(n):
        if i > bot:
            pieces.append(ALL)
        elif i < bot:
            pieces.append(NONE)
        else:
            pieces.append(_uc_within(chain.segments[i], x.pieces[i]))
    return PieceSet(tuple(pieces), inf=True)


# ---------------------------------------------------------------------------
# The stock definable sets of a coloured chain.


def successor_set(chain: ChainSpec) -> PieceSet:
    """Points with an immediate successor in the chain plus INF."""
    n = len(chain.segments)
    pieces = []
    for i, seg in enumerate(chain.segments):
        k = seg.kind
        if k.is_dense:
            pieces.append(NONE)
            continue
        if k in (SegKind.OMEGA, SegKind.INT):
            pieces.append(ALL)
            continue
        # FIN and OMEGA_STAR have a maximum whose successor is the next
        # segment's minimum, or INF at the end of the chain.
        nxt_has_min = (i + 1 >= n) or chain.segments[i + 1].kind.has_min
        if k is SegKind.FIN:
            pieces.append(ALL if nxt_has_min else ("only", frozenset(range(seg.size - 1))))
        else:
            pieces.append(ALL if nxt_has_min else ("minus", frozenset({0})))
    return PieceSet(tuple(pieces), inf=False)


def predecessor_set(chain: ChainSpec) -> PieceSet:
    n = len(chain.segments)
    pieces = []
    for i, seg in enumerate(chain.segments):
        k = seg.kind
        if k.is_dense:
            pieces.append(NONE)
            continue
        if k in (SegKind.OMEGA_STAR, SegKind.INT):
            pieces.append(ALL)
            continue
        prv_has_max = i > 0 and chain.segments[i - 1].kind.has_max
        if k is SegKind.FIN:
            pieces.append(ALL if prv_has_max else ("minus", frozenset({0})))
        else:  # OMEGA
            pieces.append(ALL if prv_has_max else ("minus", frozenset({0})))
    last_max = not chain.is_empty and chain.segments[-1].kind.has_max
    return PieceSet(tuple(pieces), inf=last_max)


def colour_piece_set(chain: ChainSpec, colour: ColourRule) -> PieceSet:
    pieces = []
    poisoned = False
    for i, seg in enumerate(chain.segments):
        rule = colour.rule_at(i)
        if isinstance(rule, ColourNone):
            pieces.append(NONE)
        elif isinstance(rule, ColourAll):
            pieces.append(ALL)
        elif isinstance(rule, ColourFinite):
            pieces.append(("only", frozenset(rule.coords)))
        elif isinstance(rule, ColourCofinite):
            pieces.append(("minus", frozenset(rule.excluded)))
        elif isinstance(rule, ColourDenseCodense):
            pieces.append(("dense", colour.name, True))
        elif isinstance(rule, ColourSchematicSingletons):
            pieces.append(SCHEMATIC)
            poisoned = True
        else:
            raise PresentationError("unhandled colour rule")
    return PieceSet(tuple(pieces), inf=False, poisoned=poisoned)


def _boundary_left_set(chain: ChainSpec, j: int) -> PieceSet:
    pieces = tuple(ALL if i <= j else NONE for i in range(len(chain.segments)))
    return PieceSet(pieces, inf=False)


# ---------------------------------------------------------------------------
# Cut classification.

_PLAIN_RULES = (ColourNone, ColourFinite, ColourSchematicSingletons)


def _candidate_sets(chain: ChainSpec):
    base = [("succ", successor_set(chain)), ("pred", predecessor_set(chain))]
    for colour in chain.colours:
        base.append((f"colour:{colour.name}", colour_piece_set(chain, colour)))
    for name, x in list(base):
        if x.poisoned:
            continue
        yield name, x
        yield f"not {name}", complement(x)
        yield f"dc({name})", downward_closure(chain, x)
        yield f"uc({name})", upward_closure(chain, x)
        yield f"dc(not {name})", downward_closure(chain, complement(x))
        yield f"uc(not {name})", upward_closure(chain, complement(x))


def _classify_boundary(chain: ChainSpec, j: int) -> CutClass:
    n = len(chain.segments)
    if j < 0:
        return CutClass(CutStatus.DEFINABLE, "empty-side",
                        "lower set is empty")
    if j >= n - 1:
        return CutClass(CutStatus.DEFINABLE, "principal",
                        "upper set has least element INF")
    left = chain.segments[j]
    right = chain.segments[j + 1]
    if left.kind.has_max:
        return CutClass(CutStatus.DEFINABLE, "principal",
                        f"segment {j} has a greatest point")
    if right.kind.has_min:
        return CutClass(CutStatus.DEFINABLE, "principal",
                        f"segment {j + 1} has a least point")
    target = _boundary_left_set(chain, j)
    for name, cand in _candidate_sets(chain):
        if piece_sets_equal_mod_finite(chain, cand, target):
            return CutClass(CutStatus.DEFINABLE, name,
                            f"lower set agrees with {name} up to finitely many points")
        if piece_sets_equal_mod_finite(chain, complement(cand), target):
            return CutClass(CutStatus.DEFINABLE, f"not {name}",
                            f"upper set agrees with {name} up to finitely many points")
    left_ok = left.kind in (SegKind.OMEGA, SegKind.INT, SegKind.DENSE_Q)
    right_ok = right.kind in (SegKind.OMEGA_STAR, SegKind.INT, SegKind.DENSE_Q)
    colours_plain = all(
        isinstance(c.rule_at(j), _PLAIN_RULES) and isinstance(c.rule_at(j + 1), _PLAIN_RULES)
        for c in chain.colours)
    if left_ok and right_ok and colours_plain:
        return CutClass(
            CutStatus.NOT_DEFINABLE, "homogeneous-gap",
            f"two-sided limit after segment {j}; order relations and colours "
            "are constant up to finitely many named points on both sides, so "
            "any formula with parameters fails beyond the points it names")
    return CutClass(CutStatus.UNKNOWN, "outside-rule-table",
                    f"no rule settles the boundary after segment {j}")


def classify_cut(chain: ChainSpec, cut: Cut) -> CutClass:
    k = cut.kind
    if k is CutKind.MINUS_INF:
        return CutClass(CutStatus.DEFINABLE, "empty-side", "lower set is empty")
    if k is CutKind.PLUS_INF:
        return CutClass(CutStatus.DEFINABLE, "principal",
                        "upper set is {INF}, a least element")
    if k in (CutKind.PRINCIPAL_PLUS, CutKind.PRINCIPAL_MINUS):
        if cut.position is None:
            raise PresentationError("principal cut needs a position")
        chain.check_position(cut.position)
        return CutClass(CutStatus.DEFINABLE, "principal",
                        "defined by comparison with the cut point itself")
    if k is CutKind.SEGMENT_BOUNDARY:
        if cut.index is None:
            raise PresentationError("boundary cut needs an index")
        return _classify_boundary(chain, cut.index)
    if k is not CutKind.LIMIT:
        raise PresentationError(f"unhandled cut kind {k}")
    if cut.index is None or cut.side is None:
        raise PresentationError("limit cut needs a segment index and side")
    if not (0 <= cut.index < len(chain.segments)):
        raise PositionOutOfDomain(f"segment {cut.index} out of range")
    seg = chain.segments[cut.index]
    if cut.side is LimitSide.INTERIOR:
        if seg.kind is SegKind.DENSE_COMPLETE:
            return CutClass(CutStatus.DEFINABLE, "complete-segment",
                            "every interior cut of a complete segment sits at "
                            "a point, hence is principal")
        if seg.kind is SegKind.DENSE_Q:
            return CutClass(
                CutStatus.NOT_DEFINABLE, "incomplete-dense-interior",
                "an interior gap of an incomplete dense segment is moved by "
                "back-and-forth maps fixing any finite parameter set")
        raise PositionOutOfDomain("discrete segments have no interior limit cuts")
    if cut.side is LimitSide.HIGH:
        return _classify_boundary(chain, cut.index)
    return _classify_boundary(chain, cut.index - 1)


def cut_classes(chain: ChainSpec) -> Iterator[Cut]:
    """Representatives of every cut class the classifier distinguishes."""
    yield Cut(CutKind.MINUS_INF)
    yield Cut(CutKind.PLUS_INF)
    for p in chain.sample_positions(per_segment=2):
        yield Cut(CutKind.PRINCIPAL_PLUS, position=p)
        yield Cut(CutKind.PRINCIPAL_MINUS, position=p)
    for j in range(len(chain.segments)):
        yield Cut(CutKind.SEGMENT_BOUNDARY, index=j)
    for i, seg in enumerate(chain.segments):
        if seg.kind.is_dense:
            yield Cut(CutKind.LIMIT, index=i, side=LimitSide.INTERIOR)


@dataclass(frozen=True)
class ChainSEReport:
    status: CutStatus          # DEFINABLE = stably embedded
    witness: Optional[Cut]
    detail: str


def chain_stably_embedded(chain: ChainSpec) -> ChainSEReport:
    """Stable embeddedness of the chain: every cut class definable.

    DEFINABLE means all enumerated cut classes are definable with
    parameters; NOT_DEFINABLE carries a witness cut; UNKNOWN means some
    cut fell outside the rule table and none was provably bad.
    """
    unknown: Optional[Cut] = None
    for cut in cut_classes(chain):
        cc = classify_cut(chain, cut)
        if cc.status is CutStatus.NOT_DEFINABLE:
            return ChainSEReport(CutStatus.NOT_DEFINABLE, cut,
                                 f"{cut.describe()}: {cc.detail}")
        if cc.status is CutStatus.UNKNOWN and unknown is None:
            unknown = cut
    if unknown is not None:
        return ChainSEReport(CutStatus.UNKNOWN, unknown,
                             f"{unknown.describe()}: outside the rule table")
    return ChainSEReport(CutStatus.DEFINABLE, None, "all cut classes definable")


# ---------------------------------------------------------------------------
# Ordered concatenation.


def _explicit_fin_rule(rule: SegmentColourRule, size: int) -> SegmentColourRule:
    if isinstance(rule, ColourAll):
        return ColourFinite(frozenset(range(size)))
    if isinstance(rule, ColourCofinite):
        return ColourFinite(frozenset(range(size)) - rule.excluded)
    if isinstance(rule, ColourNone):
        return ColourFinite(frozenset())
    if isinstance(rule, ColourFinite):
        return ColourFinite(frozenset(c for c in rule.coords if 0 <= c < size))
    raise PresentationError("colour rule not usable on a finite segment")


def _shift_fin_rule(rule: ColourFinite, offset: int) -> ColourFinite:
    return ColourFinite(frozenset(c + offset for c in rule.coords))


def ordered_sum(a: ChainSpec, b: ChainSpec) -> ChainSpec:
    """Concatenate two chains, b on top of a.

    Adjacent finite segments merge, empty finite segments never occur
    (construction forbids them), and colours are joined by name.
    """
    names = []
    for c in itertools.chain(a.colours, b.colours):
        if c.name not in names:
            names.append(c.name)

    def rules_of(spec: ChainSpec, name: str):
        try:
            col = spec.colour_named(name)
        except PresentationError:
            return tuple(ColourNone() for _ in spec.segments)
        return tuple(col.rule_at(i) for i in range(len(spec.segments)))

    segs = list(a.segments)
    per_name = {n: list(rules_of(a, n)) for n in names}
    b_rules = {n: list(rules_of(b, n)) for n in names}

    b_segs = list(b.segments)
    start = 0
    if segs and b_segs and segs[-1].kind is SegKind.FIN and b_segs[0].kind is SegKind.FIN:
        left, right = segs[-1], b_segs[0]
        segs[-1] = Segment(SegKind.FIN, left.size + right.size)
        for n in names:
            lr = _explicit_fin_rule(per_name[n][-1], left.size)
            rr = _shift_fin_rule(_explicit_fin_rule(b_rules[n][0], right.size), left.size)
            per_name[n][-1] = ColourFinite(lr.coords | rr.coords)
        start = 1
    for i in range(start, len(b_segs)):
        segs.append(b_segs[i])
        for n in names:
            per_name[n].append(b_rules[n][i])

    colours = tuple(ColourRule(n, tuple(per_name[n])) for n in names)
    return ChainSpec(tuple(segs), colours)


# ---------------------------------------------------------------------------
# Stock chains.


def fin(n: int) -> ChainSpec:
    if n == 0:
        return ChainSpec(())
    return ChainSpec((Segment(SegKind.FIN, n),))


def omega() -> ChainSpec:
    return ChainSpec((Segment(SegKind.OMEGA),))


def omega_star() -> ChainSpec:
    return ChainSpec((Segment(SegKind.OMEGA_STAR),))


def integers() -> ChainSpec:
    return ChainSpec((Segment(SegKind.INT),))


def dense_q() -> ChainSpec:
    return ChainSpec((Segment(SegKind.DENSE_Q),))


def dense_complete() -> ChainSpec:
    return ChainSpec((Segment(SegKind.DENSE_COMPLETE),))
