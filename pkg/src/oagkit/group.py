"""Ordered abelian groups presented inside a Hahn product over a chain.

A group is described by a spine (a coloured chain), a rib assignment
(which rank-1 group sits at each position), a mode, and optionally
finitely many generators:

* mode ``"hahn"``: the full Hahn product over the spine.  Elements we can
  write down have finite support away from a terminal omega segment and
  an eventually constant value (the *tail*) along that segment.
* mode ``"sum"``: the subgroup of finitely supported elements, plus the
  subgroup generated by the listed generators when there are any.

An :class:`Element` stores finitely many per-position deviations plus the
tail; the coordinate at a terminal-segment position is deviation + tail,
and equals the stored value elsewhere.  This keeps addition coordinate
free and makes eventual behaviour a property of the tail alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

from .chain import INF, ChainSpec, Position, SegKind
from .errors import PositionOutOfDomain, PresentationError
from .rib import (RIB_ZERO, RibElement, RibSpec, rib_contains, rib_divisible)


def _as_rib_value(v) -> RibElement:
    if isinstance(v, RibElement):
        return v
    return RibElement(Fraction(v))


def _primes_of(n: int) -> Tuple[int, ...]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def nth_prime(n: int) -> int:
    """The n-th prime, counting from n = 0 (2, 3, 5, ...)."""
    if n < 0:
        raise PresentationError("prime index must be nonnegative")
    count, cand = -1, 1
    while count < n:
        cand += 1
        if all(cand % d for d in range(2, int(cand ** 0.5) + 1)):
            count += 1
    return cand


def prime_index(p: int) -> int:
    """Position of the prime p in the enumeration used by nth_prime."""
    i = 0
    while True:
        q = nth_prime(i)
        if q == p:
            return i
        if q > p:
            raise PresentationError(f"{p} is not prime")
        i += 1


@dataclass(frozen=True)
class SchematicRib:
    """A rib per coordinate, given uniformly in the coordinate.

    ``template`` is "z_local" or "script_z"; the prime for coordinate n is
    ``primes[n]`` when provided, else the n-th prime.
    """

    template: str
    primes: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.template not in ("z_local", "script_z"):
            raise PresentationError(f"unknown schematic template {self.template!r}")

    def prime_for(self, n: int) -> int:
        if n < len(self.primes):
            return self.primes[n]
        return nth_prime(n)

    def rib_for(self, n: int) -> RibSpec:
        from .rib import script_z_rib, z_local_rib
        p = self.prime_for(n)
        return script_z_rib(p) if self.template == "script_z" else z_local_rib(p)

    def bad_coords(self, value: RibElement, horizon: int = 4) -> Tuple[int, ...]:
        """Coordinates n where value fails to lie in rib_for(n).

        Membership in these templates only constrains the denominator, so
        the failing set is finite and computable from the denominator's
        prime factors (each prime occurs at most once per explicit list
        plus once in the tail enumeration).
        """
        if value.w:
            return tuple(range(horizon))  # no template rib is nonstandard
        bad = set()
        denom = value.q.denominator
        for n, p in enumerate(self.primes):
            if denom % p == 0:
                bad.add(n)
        for p in _primes_of(denom):
            idx = prime_index(p)
            if idx >= len(self.primes):
                bad.add(idx)
        return tuple(sorted(bad))


@dataclass(frozen=True)
class RibEntry:
    """One clause of a rib assignment; the first matching clause wins.

    Selectors: an explicit position, a colour name (optionally within a
    segment), a segment index, or nothing (default clause).
    """

    rib: Optional[RibSpec] = None
    schematic: Optional[SchematicRib] = None
    segment: Optional[int] = None
    colour: Optional[str] = None
    position: Optional[Position] = None

    def __post_init__(self):
        if (self.rib is None) == (self.schematic is None):
            raise PresentationError("exactly one of rib or schematic per clause")

    def matches(self, chain: ChainSpec, p: Position) -> bool:
        if self.position is not None:
            return self.position == p
        if self.segment is not None and p.seg != self.segment:
            return False
        if self.colour is not None:
            return chain.has_colour(self.colour, p)
        return True

    def rib_at(self, p: Position) -> RibSpec:
        if self.rib is not None:
            return self.rib
        coord = p.coord
        if not isinstance(coord, int):
            raise PresentationError("schematic ribs need integer coordinates")
        return self.schematic.rib_for(coord)


@dataclass(frozen=True)
class Generator:
    """An extra generator: finitely many prefix values plus a nonzero tail
    along the terminal omega segment.

    Only the tail matters for the subgroup generated (the prefix is a
    finitely supported element, already present), so membership and
    decomposition read tails alone.
    """

    name: str
    tail: RibElement
    prefix: Tuple[Tuple[Position, RibElement], ...] = ()

    def __post_init__(self):
        if not self.tail:
            raise PresentationError(f"generator {self.name!r} needs a nonzero tail")


@dataclass(frozen=True)
class Element:
    """Deviations (position -> rib value) plus a tail.

    ``fp`` pairs are sorted in chain order; zero deviations are dropped.
    Build elements through :meth:`GroupSpec.el`, which canonicalizes.
    """

    fp: Tuple[Tuple[Position, RibElement], ...] = ()
    tail: RibElement = RIB_ZERO

    def deviation(self, p: Position) -> RibElement:
        for pos, v in self.fp:
            if pos == p:
                return v
        return RIB_ZERO

    @property
    def is_zero(self) -> bool:
        return not self.fp and not self.tail

    def __repr__(self) -> str:
        parts = [f"{pos}:{v!r}" for pos, v in self.fp]
        if self.tail or not parts:
            parts.append(f"tail={self.tail!r}")
        return "el(" + ", ".join(parts) + ")"


ZERO_ELEMENT = Element()


@dataclass(frozen=True)
class GroupSpec:
    name: str
    spine: ChainSpec
    ribs: Tuple[RibEntry, ...]
    mode: str = "hahn"
    generators: Tuple[Generator, ...] = ()

    def __post_init__(self):
        if self.mode not in ("hahn", "sum"):
            raise PresentationError(f"unknown mode {self.mode!r}")
        if self.generators:
            if self.mode != "sum":
                raise PresentationError("generators only extend a sum presentation")
            if self.terminal_omega is None:
                raise PresentationError("generators need a terminal omega segment")
            if len(self.generators) > 2:
                raise PresentationError("at most two independent generator tails")
            if len(self.generators) == 2:
                t1, t2 = (g.tail for g in self.generators)
                if t1.q * t2.w - t2.q * t1.w == 0:
                    raise PresentationError(
                        "generator tails must be independent over the integers")
            for g in self.generators:
                for pos, v in g.prefix:
                    self.spine.check_position(pos)
                    if not rib_contains(self.rib_at(pos), v):
                        raise PresentationError(
                            f"generator {g.name!r} prefix value {v!r} outside its rib")
                if not self._tail_cofinally_ok(g.tail):
                    raise PresentationError(
                        f"generator {g.name!r} tail {g.tail!r} leaves the ribs cofinally")

    # -- geometry ------------------------------------------------------

    @property
    def terminal_omega(self) -> Optional[int]:
        """Index of the last segment if it is an omega segment."""
        segs = self.spine.segments
        if segs and segs[-1].kind is SegKind.OMEGA:
            return len(segs) - 1
        return None

    def rib_at(self, p: Position) -> RibSpec:
        self.spine.check_position(p)
        for entry in self.ribs:
            if entry.matches(self.spine, p):
                return entry.rib_at(p)
        raise PresentationError(f"no rib assigned at {p}")

    def _terminal_entry(self) -> Optional[RibEntry]:
        t = self.terminal_omega
        if t is None:
            return None
        return next((e for e in self.ribs if e.matches(self.spine, Position(t, 0))), None)

    def _tail_bad_coords(self, tail: RibElement) -> Tuple[int, ...]:
        """Terminal coordinates where the tail value leaves its rib."""
        t = self.terminal_omega
        if t is None or not tail:
            return ()
        entry = self._terminal_entry()
        if entry is not None and entry.schematic is not None:
            return entry.schematic.bad_coords(tail)
        return tuple(n for n in range(8)
                     if not rib_contains(self.rib_at(Position(t, n)), tail))

    def _tail_cofinally_ok(self, tail: RibElement) -> bool:
        t = self.terminal_omega
        if t is None:
            return not tail
        if not tail:
            return True
        entry = self._terminal_entry()
        if entry is None:
            return False
        if entry.schematic is not None:
            # template membership constrains only the denominator, and
            # each denominator prime excludes at most finitely many
            # coordinates
            return not tail.w
        return rib_contains(entry.rib_at(Position(t, 0)), tail)

    # -- element construction and arithmetic ----------------------------

    def el(self, pairs: Iterable[Tuple[Position, object]] = (),
           tail=0) -> Element:
        """Build an element from absolute coordinates plus a tail value."""
        tail = _as_rib_value(tail)
        t = self.terminal_omega
        if tail and t is None:
            raise PresentationError("a tail needs a terminal omega segment")
        seen = set()
        devs = []
        for pos, v in pairs:
            if isinstance(pos, tuple):
                pos = Position(*pos)
            self.spine.check_position(pos)
            if pos in seen:
                raise PresentationError(f"duplicate coordinate at {pos}")
            seen.add(pos)
            v = _as_rib_value(v)
            dev = v - tail if pos.seg == t else v
            if dev:
                devs.append((pos, dev))
        devs.sort(key=lambda pv: self.spine.sort_key(pv[0]))
        return Element(tuple(devs), tail)

    def _raw(self, devs: Sequence[Tuple[Position, RibElement]],
             tail: RibElement) -> Element:
        devs = [(p, v) for p, v in devs if v]
        devs.sort(key=lambda pv: self.spine.sort_key(pv[0]))
        return Element(tuple(devs), tail)

    def coordinate(self, e: Element, p: Position) -> RibElement:
        self.spine.check_position(p)
        base = e.tail if p.seg == self.terminal_omega else RIB_ZERO
        return base + e.deviation(p)

    def add(self, a: Element, b: Element) -> Element:
        merged = {}
        for pos, v in itertools.chain(a.fp, b.fp):
            merged[pos] = merged.get(pos, RIB_ZERO) + v
        return self._raw(list(merged.items()), a.tail + b.tail)

    def neg(self, a: Element) -> Element:
        return Element(tuple((p, -v) for p, v in a.fp), -a.tail)

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def scale(self, a: Element, k) -> Element:
        k = Fraction(k)
        if not k:
            return ZERO_ELEMENT
        return Element(tuple((p, v.scale(k)) for p, v in a.fp), a.tail.scale(k))

    def generator_element(self, g) -> Element:
        if isinstance(g, str):
            by_name = {gen.name: gen for gen in self.generators}
            if g not in by_name:
                raise PresentationError(f"no generator named {g!r}")
            g = by_name[g]
        return self.el(g.prefix, tail=g.tail) if g.prefix else Element((), g.tail)

    # -- support and order ----------------------------------------------

    def support_candidates(self, e: Element) -> Iterator[Position]:
        """Positions where the coordinate might be nonzero, in order.

        Finitely many: the deviation positions, and an initial run of the
        terminal segment long enough to pass every deviation there and
        every coordinate the tail leaves its rib at.
        """
        t = self.terminal_omega
        extra: list = []
        if t is not None and e.tail:
            top = 0
            for pos, _ in e.fp:
                if pos.seg == t:
                    top = max(top, pos.coord + 1)
            for n in self._tail_bad_coords(e.tail):
                top = max(top, n + 1)
            extra = [Position(t, n) for n in range(top + 1)]
        seen = set()
        allpos = [p for p, _ in e.fp] + extra
        allpos.sort(key=self.spine.sort_key)
        for p in allpos:
            if p not in seen:
                seen.add(p)
                yield p

    def nat_val(self, e: Element):
        """Least position with a nonzero coordinate; INF for zero."""
        for p in self.support_candidates(e):
            if self.coordinate(e, p):
                return p
        return INF if not e.tail else self._first_free_terminal(e)

    def _first_free_terminal(self, e: Element) -> Position:
        t = self.terminal_omega
        taken = {p.coord for p, _ in e.fp if p.seg == t}
        n = 0
        while n in taken:
            n += 1
        return Position(t, n)

    def sign_of(self, e: Element) -> int:
        v = self.nat_val(e)
        if v is INF:
            return 0
        return self.coordinate(e, v).sign

    def compare(self, a: Element, b: Element) -> int:
        return self.sign_of(self.sub(a, b))

    # -- membership ------------------------------------------------------

    def tail_coefficients(self, tail: RibElement) -> Optional[Tuple[int, ...]]:
        """Integer generator coefficients producing this tail, or None."""
        gens = self.generators
        if not gens:
            return () if not tail else None
        if len(gens) == 1:
            t = gens[0].tail
            c = tail.q / t.q if t.q else tail.w / t.w
            if c.denominator == 1 and t.scale(c) == tail:
                return (int(c),)
            return None
        t1, t2 = gens[0].tail, gens[1].tail
        det = t1.q * t2.w - t2.q * t1.w
        c1 = (tail.q * t2.w - tail.w * t2.q) / det
        c2 = (t1.q * tail.w - t1.w * tail.q) / det
        if c1.denominator == 1 and c2.denominator == 1:
            return (int(c1), int(c2))
        return None

    def contains(self, e: Element) -> bool:
        for p in self.support_candidates(e):
            if not rib_contains(self.rib_at(p), self.coordinate(e, p)):
                return False
        if e.tail and not self._tail_cofinally_ok(e.tail):
            return False
        if self.mode == "sum":
            return self.tail_coefficients(e.tail) is not None
        return True

    def in_m_multiples(self, e: Element, m: int):
        """Whether e is an m-th multiple of a group element.

        Returns (True, witness) with m * witness == e, else (False, None).
        An exact witness must have coordinate e_p / m everywhere, so the
        test is coordinate-wise rib divisibility plus, in sum mode, the
        tail landing back in the generator lattice.
        """
        if m <= 0:
            raise PresentationError("modulus must be positive")
        if m == 1:
            return (True, e) if self.contains(e) else (False, None)
        candidate = self.scale(e, Fraction(1, m))
        if self.contains(candidate):
            return True, candidate
        return False, None

    # -- presentation summary ---------------------------------------------

    def skeleton(self) -> dict:
        segs = [{"kind": s.kind.value, **({"size": s.size} if s.kind is SegKind.FIN else {})}
                for s in self.spine.segments]
        rib_samples = []
        for p in self.spine.sample_positions(per_segment=3):
            rib_samples.append({
                "segment": p.seg,
                "coord": str(p.coord),
                "rib": self.rib_at(p).name,
            })
        return {
            "group": self.name,
            "mode": self.mode,
            "segments": segs,
            "colours": [c.name for c in self.spine.colours],
            "rib_samples": rib_samples,
            "generators": [{"name": g.name, "tail": _rib_str(g.tail)}
                           for g in self.generators],
            "top": "INF",
        }


def _rib_str(v: RibElement) -> str:
    if not v.w:
        return str(v.q)
    return f"{v.q}+{v.w}*W"


# ---------------------------------------------------------------------------
# Pairs of groups.

PAIR_FLAGS = frozenset({"sum_inside_hahn", "generator_extension", "rib_extension"})


def _rib_extends(small: RibSpec, big: RibSpec) -> bool:
    if small == big:
        return True
    if small.domain == "int":
        return True  # integers sit in every shape here
    if small.domain == "rat":
        return big.domain == "rat"
    if isinstance(small.domain, tuple):
        if big.domain == "rat":
            return True
        if isinstance(big.domain, tuple):
            return set(big.domain[1]) <= set(small.domain[1])
    return False


@dataclass(frozen=True)
class PairSpec:
    """A group together with an extension of it, position by position."""

    small: GroupSpec
    big: GroupSpec
    flags: frozenset = frozenset()

    def __post_init__(self):
        if not self.flags <= PAIR_FLAGS:
            raise PresentationError(f"unknown pair flags {set(self.flags) - PAIR_FLAGS}")
        if self.small.spine.segments != self.big.spine.segments:
            raise PresentationError("the two spines must share their segments")
        for p in self.small.spine.sample_positions(per_segment=3):
            if not _rib_extends(self.small.rib_at(p), self.big.rib_at(p)):
                raise PresentationError(f"rib at {p} does not extend")

    def rib_pair_at(self, p: Position) -> Tuple[RibSpec, RibSpec]:
        return self.small.rib_at(p), self.big.rib_at(p)
