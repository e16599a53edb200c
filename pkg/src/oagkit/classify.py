"""Stable embeddedness verdicts for groups and pairs.

A verdict is assembled from independent pieces of evidence: value-set
uniformity, absence of limit values, maximality, the ribs on their own,
and definability of cuts on the coloured spine quotient.  Each piece is
recorded as a reason, so a verdict can be audited step by step.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

from .chain import CutStatus, SegKind, chain_stably_embedded
from .errors import HypothesisViolated, NotFRRError, NotRegularError
from .group import Element, GroupSpec, PairSpec
from .pseudo import NoMaximum, immediate_ext_check
from .rib import (OMEGA_UNIT, RIB_ONE, RibElement, rib_contains,
                  rib_elem_equiv, rib_pair_stably_embedded,
                  rib_stably_embedded)
from .valuation import (check_m, check_ur, regular_spine, segment_layout,
                        spine_m)


class Status(enum.Enum):
    SE = "stably embedded"
    USE = "uniformly stably embedded"
    NOT_SE = "not stably embedded"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Reason:
    rule: str
    witness: object = None
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    status: Status
    reasons: Tuple[Reason, ...] = ()

    def why(self) -> str:
        return "; ".join(f"{r.rule}: {r.detail}" if r.detail else r.rule
                         for r in self.reasons)


# -- finite decompositions ----------------------------------------------------


def _all_positions(g: GroupSpec):
    """Every position of a finite spine, in order; None when infinite."""
    out = []
    for i, seg in enumerate(g.spine.segments):
        if seg.kind is not SegKind.FIN:
            return None
        from .chain import Position
        out.extend(Position(i, j) for j in range(seg.size))
    return out


def _is_p_point(g: GroupSpec, p) -> bool:
    """Positions whose rib resists division by some prime."""
    return g.rib_at(p).nondivisible_primes != ()


def frr_classes(g: GroupSpec):
    """Convex blocks of the spine, each closed on top at a resisting
    position; a trailing block of divisible positions may remain."""
    positions = _all_positions(g)
    if positions is None:
        raise NotFRRError(
            f"{g.name}: the spine is infinite, so the chain of full convex "
            "subgroups picked out by resisting positions does not terminate")
    classes = []
    cur = []
    for p in positions:
        cur.append(p)
        if _is_p_point(g, p):
            classes.append(tuple(cur))
            cur = []
    if cur:
        classes.append(tuple(cur))
    return tuple(classes)


def _class_verdict(g: GroupSpec, cls) -> Tuple[Status, Reason]:
    if len(cls) > 1:
        return Status.NOT_SE, Reason(
            "convex-block", cls,
            "two positions share a block, so a proper convex subgroup "
            "sits strictly inside it; its cut is a non-definable trace")
    p = cls[0]
    rib = g.rib_at(p)
    if rib.discrete:
        return Status.USE, Reason(
            "discrete-rib", p, "integer-like coordinate: congruence and "
            "order data decide every trace, uniformly in the pair")
    if rib.nondivisible_primes == () and rib.cut_complete:
        return Status.USE, Reason(
            "divisible-complete-rib", p,
            "divisible and cut complete: traces are intervals with "
            "endpoints already present")
    if rib.cut_complete:
        return Status.SE, Reason(
            "complete-rib", p,
            "cut complete coordinate: parameter cuts land on points of "
            "the rib, though not uniformly across pairs")
    return Status.NOT_SE, Reason(
        "gap-cut", p,
        "the rib has a gap cut; a pair can pinch it from outside")


def classify_regular(g: GroupSpec) -> Verdict:
    """Verdict for a group whose resisting positions fill one block."""
    classes = frr_classes(g)
    if len(classes) > 1:
        raise NotRegularError(
            f"{g.name}: {len(classes)} convex blocks; not regular")
    status, reason = _class_verdict(g, classes[0])
    return Verdict(status, (reason,))


@dataclass(frozen=True)
class RankReport:
    finite: bool
    classes: Optional[Tuple] = None
    note: str = ""


def regular_rank(g: GroupSpec) -> RankReport:
    try:
        classes = frr_classes(g)
    except NotFRRError as e:
        return RankReport(False, None, str(e))
    return RankReport(True, classes,
                      f"{len(classes)} convex blocks between 0 and the "
                      "whole group")


def classify_frr(g: GroupSpec) -> Verdict:
    """Verdict by convex blocks, for finite regular rank."""
    classes = frr_classes(g)
    reasons = []
    worst = Status.USE
    for cls in classes:
        status, reason = _class_verdict(g, cls)
        reasons.append(reason)
        if status is Status.NOT_SE:
            return Verdict(Status.NOT_SE, tuple(reasons))
        if status is Status.SE:
            worst = Status.SE
    return Verdict(worst, tuple(reasons))


# -- the main pipeline --------------------------------------------------------


def _segment_ribs(g: GroupSpec, i: int):
    lay = segment_layout(g, i)
    if lay.kind == "uniform":
        return (lay.rib,)
    if lay.kind == "split":
        return (lay.rib, lay.rib_off)
    return tuple(lay.schematic.rib_for(n) for n in range(3))


def _hahnification(g: GroupSpec) -> PairSpec:
    big = GroupSpec(g.name + "^", g.spine, g.ribs, mode="hahn")
    return PairSpec(g, big, frozenset({"sum_inside_hahn"}))


def classify_main(g: GroupSpec, bound: int = 12) -> Verdict:
    reasons = []

    ur = check_ur(g, bound)
    if not ur.holds:
        rep = chain_stably_embedded(g.spine)
        if rep.status is CutStatus.NOT_DEFINABLE:
            return Verdict(Status.NOT_SE, (
                Reason("value-sets", ur.witness, ur.note),
                Reason("spine-cut", rep.witness, rep.detail)))
        return Verdict(Status.UNKNOWN, (
            Reason("value-sets-open", ur.witness,
                   ur.note + "; no spine cut witnesses a failure"),))
    detail = f"value sets stabilize at modulus {ur.modulus}"
    dense = {p[1] for p in spine_m(g, ur.modulus or 2).pieces
             if p[0] == "dense"}
    if dense:
        detail += ("; the value set is the dense-codense locus "
                   + ", ".join(sorted(dense)))
    reasons.append(Reason("value-sets", None, detail))

    mres = check_m(g, bound)
    if not mres.holds:
        return Verdict(Status.UNKNOWN, (*reasons, Reason(
            "limit-value", mres.witness, mres.note)))
    reasons.append(Reason("no-limit-values", None, mres.note))

    if g.mode == "sum" and g.terminal_omega is not None:
        if g.generators:
            return Verdict(Status.UNKNOWN, (*reasons, Reason(
                "maximality-open", None,
                "a finitely generated extension of a small sum: maximality "
                "is not settled by the implemented criteria")))
        pair = _hahnification(g)
        h = Element((), RIB_ONE)
        rep = immediate_ext_check(pair, h)
        if rep.kind == "no_maximum":
            return Verdict(Status.NOT_SE, (*reasons, Reason(
                "not-maximal", rep,
                "the constant-1 thread of the full product is approximated "
                "cofinally but never reached; the cut under it has no "
                "definable trace")))
        return Verdict(Status.UNKNOWN, (*reasons, Reason(
            "maximality-open", rep, "no missing pseudo-limit was exhibited")))
    reasons.append(Reason("maximal", None,
                          "full products and finite sums are "
                          "pseudo-complete"))

    for i in range(len(g.spine.segments)):
        for rib in _segment_ribs(g, i):
            ok, why = rib_stably_embedded(rib)
            if not ok:
                return Verdict(Status.NOT_SE, (*reasons, Reason(
                    "rib-cut", rib, why)))
    reasons.append(Reason("ribs", None, "every rib is stably embedded"))

    rs = regular_spine(g)
    rep = chain_stably_embedded(rs.chain)
    if rep.status is CutStatus.NOT_DEFINABLE:
        return Verdict(Status.NOT_SE, (*reasons, Reason(
            "spine-cut", rep.witness, rep.detail)))
    if rep.status is CutStatus.UNKNOWN:
        return Verdict(Status.UNKNOWN, (*reasons, Reason(
            "spine-cut-open", rep.witness, rep.detail)))
    reasons.append(Reason("spine-cuts", None, rep.detail))

    if _all_positions(g) is not None:
        frr = classify_frr(g)
        return Verdict(frr.status, (*reasons, *frr.reasons))
    return Verdict(Status.SE, tuple(reasons))


@dataclass(frozen=True)
class CutReport:
    definable: Optional[bool]
    witness: object = None
    detail: str = ""


def all_cuts_definable(g: GroupSpec, bound: int = 12) -> CutReport:
    """Whether every parameter cut over the group is definable.  Only
    meaningful under the two value-set hypotheses; raises otherwise."""
    ur = check_ur(g, bound)
    if not ur.holds:
        raise HypothesisViolated(
            f"{g.name}: value sets do not stabilize; " + ur.note,
            check="uniform value sets", witness=ur.witness)
    mres = check_m(g, bound)
    if not mres.holds:
        raise HypothesisViolated(
            f"{g.name}: a combination has a limit value; " + mres.note,
            check="no limit values", witness=mres.witness)
    verdict = classify_main(g, bound)
    if verdict.status in (Status.SE, Status.USE):
        return CutReport(True, None,
                         "stably embedded: every cut trace is definable")
    if verdict.status is Status.NOT_SE:
        bad = verdict.reasons[-1]
        return CutReport(False, bad.witness, bad.detail)
    return CutReport(None, None, verdict.why())


# -- pairs --------------------------------------------------------------------


def check_elementary_pair(pair: PairSpec):
    """(True | False | None, detail) for smallness sitting elementarily."""
    if pair.small == pair.big:
        return True, "the two groups are the same presentation"
    for p in pair.small.spine.sample_positions():
        rib_s, rib_b = pair.rib_pair_at(p)
        if not rib_elem_equiv(rib_s, rib_b):
            return False, (f"at {p} the ribs are not elementarily "
                           "equivalent")
    for p in pair.small.spine.sample_positions():
        rib_s, rib_b = pair.rib_pair_at(p)
        if rib_s == rib_b:
            continue
        if rib_s.domain == "int" and rib_b.nonstandard:
            continue  # integers under a nonstandard window
        return None, f"rib change at {p} is outside the known rules"
    return True, ("identical spines, with rib changes limited to "
                  "elementary window extensions")


def _fresh_elements(pair: PairSpec):
    """Sampled elements of the big group likely to sit outside the small
    one: generator tails, the constant-1 thread, and one-off coordinates
    from strictly bigger ribs."""
    small, big = pair.small, pair.big
    out = []
    small_gens = {g.name for g in small.generators}
    for gen in big.generators:
        if gen.name not in small_gens:
            out.append((f"generator {gen.name}", big.generator_element(gen)))
    if big.mode == "hahn" and small.mode == "sum" and \
            big.terminal_omega is not None:
        out.append(("constant-1 thread", Element((), RIB_ONE)))
    for p in big.spine.sample_positions(2):
        rib_s, rib_b = pair.rib_pair_at(p)
        if rib_s == rib_b:
            continue
        for w in (OMEGA_UNIT, RibElement(1, 2), RibElement(1, 3)):
            if rib_contains(rib_b, w) and not rib_contains(rib_s, w):
                out.append((f"fresh coordinate at {p}", big.el([(p, w)])))
                break
    return out


def classify_pair(pair: PairSpec, bound: int = 6, depth: int = 6) -> Verdict:
    from .approx import best_approx

    if pair.small == pair.big:
        return Verdict(Status.SE, (Reason(
            "identity", None, "a structure is trivially stably embedded "
            "in itself"),))

    reasons = []
    open_points = []

    elem, detail = check_elementary_pair(pair)
    if elem is False:
        return Verdict(Status.UNKNOWN, (Reason(
            "not-elementary", None,
            detail + "; stable embeddedness is not posed"),))
    reasons.append(Reason("elementary", None, detail))

    small_ready = check_ur(pair.small, bound).holds and \
        check_m(pair.small, bound).holds

    fresh = _fresh_elements(pair)
    for label, h in fresh:
        if pair.small.contains(h):
            continue
        rep = immediate_ext_check(pair, h, depth)
        if rep.kind == "no_maximum":
            return Verdict(Status.NOT_SE, (*reasons, Reason(
                "missing-pseudo-limit", rep,
                f"{label} is approximated cofinally from the small group "
                "but never best; the cut below it has no definable trace")))
        reasons.append(Reason("adds-width", rep.position,
                              f"{label} deviates at {rep.position} inside "
                              "a strictly bigger rib"))

    for label, h in fresh:
        if pair.small.contains(h):
            continue
        for m in range(2, bound + 1):
            ap = best_approx(pair, h, 1, m, depth)
            if isinstance(ap, NoMaximum):
                if small_ready:
                    return Verdict(Status.NOT_SE, (*reasons, Reason(
                        "congruence-ladder", ap,
                        f"no best approximation of {label} modulo {m}: the "
                        "residue ladder is pseudo-convergent with no "
                        "pseudo-limit in the small group, and its trace is "
                        "not definable")))
                open_points.append(Reason(
                    "congruence-ladder-open", ap,
                    f"a cofinal residue ladder modulo {m} was found but the "
                    "small group fails a value-set hypothesis"))

    for p in pair.small.spine.sample_positions():
        rib_s, rib_b = pair.rib_pair_at(p)
        ok, why = rib_pair_stably_embedded(rib_s, rib_b)
        if ok is False:
            return Verdict(Status.NOT_SE, (*reasons, Reason(
                "rib-pair-cut", p, why)))
        if ok is None:
            open_points.append(Reason("rib-pair-open", p, why))

    reasons.append(Reason("spine", None,
                          "the pair shares one spine; no new cuts appear"))
    if open_points:
        return Verdict(Status.UNKNOWN, (*reasons, *open_points))
    return Verdict(Status.SE, tuple(reasons))
