"""Rank-1 coefficient groups ("ribs") sitting at chain positions.

A rib is an ordered abelian subgroup of a rank-1 or rank-2 test bed:
elements are ``q + w*OMEGA`` with rational q, w, where OMEGA is a fixed
positive infinite unit.  Standard ribs live in the w = 0 slice; the one
nonstandard rib shape is the window ``D = {q + w*OMEGA : q + w integral}``,
a discrete group with least positive element 1 in which OMEGA is congruent
to 1 modulo every modulus.

Ribs carry exactly the structure the rest of the package consumes:
membership, divisibility with witnesses, least positive element, residues,
elementary equivalence, and the stable-embeddedness facts for rank-1
groups and rank-1 pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import PresentationError


@dataclass(frozen=True, order=True)
class RibElement:
    """The value q + w*OMEGA, ordered lexicographically by (w, q)."""

    w: Fraction
    q: Fraction

    def __init__(self, q, w=0):
        object.__setattr__(self, "q", Fraction(q))
        object.__setattr__(self, "w", Fraction(w))

    def __add__(self, other: "RibElement") -> "RibElement":
        return RibElement(self.q + other.q, self.w + other.w)

    def __sub__(self, other: "RibElement") -> "RibElement":
        return RibElement(self.q - other.q, self.w - other.w)

    def __neg__(self) -> "RibElement":
        return RibElement(-self.q, -self.w)

    def scale(self, k) -> "RibElement":
        k = Fraction(k)
        return RibElement(self.q * k, self.w * k)

    def __mul__(self, k):
        return self.scale(k)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.q or self.w)

    @property
    def sign(self) -> int:
        if self.w:
            return 1 if self.w > 0 else -1
        if self.q:
            return 1 if self.q > 0 else -1
        return 0

    def __repr__(self) -> str:
        if not self.w:
            return f"rib({self.q})"
        return f"rib({self.q}+{self.w}*OMEGA)"


RIB_ZERO = RibElement(0)
RIB_ONE = RibElement(1)
OMEGA_UNIT = RibElement(0, 1)

# domain tags: "int", "rat", or ("coprime", primes) for rationals whose
# reduced denominator avoids the listed primes
Domain = Union[str, Tuple[str, Tuple[int, ...]]]


def _check_domain(domain: Domain) -> None:
    if domain in ("int", "rat"):
        return
    if (isinstance(domain, tuple) and len(domain) == 2 and domain[0] == "coprime"
            and all(isinstance(p, int) and p >= 2 for p in domain[1])):
        return
    raise PresentationError(f"bad rib domain {domain!r}")


@dataclass(frozen=True)
class RibSpec:
    """Shape of one rib.

    ``cut_complete`` states that every interior cut of the underlying
    order sits at a point (true for the integer and real-like shapes,
    false for rational-like ones).  ``nonstandard`` selects the window D
    described in the module docstring; it forces an integer-like domain
    read on q + w.
    """

    name: str
    domain: Domain = "int"
    cut_complete: bool = True
    nonstandard: bool = False

    def __post_init__(self):
        _check_domain(self.domain)
        if self.nonstandard and self.domain != "int":
            raise PresentationError("the nonstandard window extends the integers")
        if self.domain == "rat" and not self.nonstandard:
            pass
        if self.domain == "int" and not self.cut_complete:
            raise PresentationError("a discrete rank-1 group is cut complete")

    @property
    def discrete(self) -> bool:
        return self.domain == "int"

    def index_at(self, p: int) -> int:
        """The index of p-multiples, either 1 or p."""
        if self.domain == "int":
            return p
        if self.domain == "rat":
            return 1
        return p if p in self.domain[1] else 1

    @property
    def nondivisible_primes(self) -> Optional[Tuple[int, ...]]:
        """Primes with index p; None means all of them."""
        if self.domain == "int":
            return None
        if self.domain == "rat":
            return ()
        return tuple(sorted(self.domain[1]))


def _denominator_ok(q: Fraction, primes: Tuple[int, ...]) -> bool:
    return all(q.denominator % p != 0 for p in primes)


def rib_contains(rib: RibSpec, x: RibElement) -> bool:
    if x.w:
        return rib.nonstandard and (x.q + x.w).denominator == 1
    if rib.nonstandard or rib.domain == "int":
        return x.q.denominator == 1
    if rib.domain == "rat":
        return True
    return _denominator_ok(x.q, rib.domain[1])


def rib_divisible(rib: RibSpec, x: RibElement, m: int):
    """Whether x is an m-th multiple within the rib.

    Returns (True, witness) with witness*m == x, or (False, None).
    """
    if m <= 0:
        raise PresentationError("modulus must be positive")
    if m == 1:
        return True, x
    y = x.scale(Fraction(1, m))
    if rib_contains(rib, y):
        return True, y
    return False, None


def rib_min_positive(rib: RibSpec) -> Optional[RibElement]:
    return RIB_ONE if rib.discrete else None


def rib_residue(rib: RibSpec, x: RibElement, m: int) -> int:
    """Canonical residue of x modulo m-multiples, for discrete ribs.

    In the nonstandard window, x is congruent to the integer q + w
    because x - (q + w) is divisible by every modulus.
    """
    if m <= 0:
        raise PresentationError("modulus must be positive")
    if not rib.discrete:
        raise PresentationError("residues are canonical only in discrete ribs")
    if not rib_contains(rib, x):
        raise PresentationError(f"{x!r} is not in rib {rib.name!r}")
    total = x.q + x.w
    return int(total) % m


def rib_elem_equiv(a: RibSpec, b: RibSpec) -> bool:
    """Elementary equivalence of two ribs as ordered groups.

    Discrete rank-1 shapes here all satisfy the integer first-order
    theory (least positive element 1, every prime index p).  Dense ones
    are equivalent exactly when their prime index profiles agree.
    """
    if a.discrete != b.discrete:
        return False
    if a.discrete:
        return True
    return a.nondivisible_primes == b.nondivisible_primes


def rib_stably_embedded(rib: RibSpec):
    """Is this rank-1 group stably embedded in its elementary pairs?

    Returns (verdict, reason).  A dense shape with a gap (not cut
    complete) loses: an extension realizes the gap and the trace of a
    half-line below the new point is not definable inside.  The
    nonstandard window loses: an extension with a new archimedean class
    under OMEGA traces out the standard part, which is not definable.
    """
    if rib.nonstandard:
        return False, ("not archimedean: an elementary extension realizes the "
                       "cut above the finite part, whose trace is undefinable")
    if rib.discrete:
        return True, "archimedean discrete: traces are eventual congruence sets"
    if rib.cut_complete:
        return True, "cut complete: every traced cut sits at a point"
    return False, ("dense with gaps: an extension realizes a gap cut whose "
                   "trace is not definable with internal parameters")


def rib_pair_stably_embedded(small: RibSpec, big: RibSpec):
    """Stable embeddedness of the concrete rank-1 pair small <= big.

    Returns (verdict, reason) with verdict True, False, or None when the
    pair falls outside the rule table.
    """
    if small == big:
        return True, "identity pair"
    if small.domain == "int" and not small.nonstandard and big.nonstandard:
        return True, ("integer part of the nonstandard window: interval and "
                      "congruence traces stay eventually periodic, hence definable")
    if not small.discrete and small.cut_complete:
        return True, "cut complete below: traced cuts sit at points of the small rib"
    if not small.discrete and not small.cut_complete and not big.discrete:
        return False, ("dense with gaps below a proper dense extension: a gap "
                       "of the small rib is realized above and its trace is "
                       "not definable inside")
    return None, "rank-1 pair outside the rule table"


# stock shapes ---------------------------------------------------------------

def z_rib() -> RibSpec:
    return RibSpec("z")


def q_rib() -> RibSpec:
    return RibSpec("q", domain="rat", cut_complete=False)


def r_proxy_rib() -> RibSpec:
    return RibSpec("r", domain="rat", cut_complete=True)


def z_local_rib(p: int) -> RibSpec:
    """Rationals with denominator prime to p: dense, index p at p only."""
    return RibSpec(f"z_({p})", domain=("coprime", (p,)), cut_complete=False)


def script_z_rib(p: int) -> RibSpec:
    """Cut-complete dense shape with index p at p only."""
    return RibSpec(f"Z_({p})", domain=("coprime", (p,)), cut_complete=True)


def window_rib() -> RibSpec:
    """The nonstandard discrete window D."""
    return RibSpec("window", domain="int", nonstandard=True)
